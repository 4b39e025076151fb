#pragma once

// Internal coefficient domains and the strong Groebner engine shared by
// groebner.cpp and slices.cpp.  Base rings: Z (Euclidean reduction with
// canonical nonnegative residues), Q and F_p (classical Buchberger).

#include "lenhil/modules.hpp"
#include "lenhil/poly.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace lenhil::detail {

struct ZDom {
    using K = Int;
    static constexpr bool is_field = false;
    K from_rat(const Rat& q) const {
        if (q.get_den() != 1) throw ModuleError("integer coefficient expected");
        return q.get_num();
    }
    Rat to_rat(const K& a) const { return Rat(a); }
    bool is_zero(const K& a) const { return a == 0; }
    K neg(const K& a) const { return -a; }
    K add(const K& a, const K& b) const { return a + b; }
    K sub(const K& a, const K& b) const { return a - b; }
    K mul(const K& a, const K& b) const { return a * b; }
};

struct QDom {
    using K = Rat;
    static constexpr bool is_field = true;
    K from_rat(const Rat& q) const { return q; }
    Rat to_rat(const K& a) const { return a; }
    bool is_zero(const K& a) const { return a == 0; }
    K neg(const K& a) const { return -a; }
    K add(const K& a, const K& b) const { return a + b; }
    K sub(const K& a, const K& b) const { return a - b; }
    K mul(const K& a, const K& b) const { return a * b; }
    K inv(const K& a) const { return 1 / a; }
};

struct FpDom {
    long p = 2;
    using K = long;
    static constexpr bool is_field = true;
    K from_rat(const Rat& q) const {
        Int num = q.get_num() % p;
        if (num < 0) num += p;
        Int den = q.get_den() % p;
        K d = normalize(den.get_si());
        if (d == 0) throw ModuleError("denominator not invertible mod p");
        return mulmod(num.get_si(), inv(d));
    }
    Rat to_rat(const K& a) const { return Rat(a); }
    K normalize(long a) const {
        long r = a % p;
        return r < 0 ? r + p : r;
    }
    bool is_zero(const K& a) const { return a == 0; }
    K neg(const K& a) const { return a == 0 ? 0 : p - a; }
    K add(const K& a, const K& b) const {
        long s = a + b;
        return s >= p ? s - p : s;
    }
    K sub(const K& a, const K& b) const {
        long s = a - b;
        return s < 0 ? s + p : s;
    }
    long mulmod(long a, long b) const { return static_cast<long>((__int128)a * b % p); }
    K mul(const K& a, const K& b) const { return mulmod(a, b); }
    K inv(const K& a) const {
        long t = 0, nt = 1, r = p, nr = a;
        while (nr != 0) {
            long q = r / nr;
            long tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        if (r != 1) throw ModuleError("not invertible mod p");
        return normalize(t);
    }
};

template <class Dom>
struct TVec {
    using K = typename Dom::K;
    std::map<Term, K, TermGreater> t;  // descending; begin() is the lead

    bool is_zero() const { return t.empty(); }
    const Term& lead_term() const { return t.begin()->first; }
    const K& lead_coeff() const { return t.begin()->second; }
    int degree() const {
        int d = -1;
        for (const auto& [tm, c] : t) d = std::max(d, tm.mon.degree());
        return d;
    }
    void add_term(const Dom& dom, const Term& tm, const K& c) {
        if (dom.is_zero(c)) return;
        auto it = t.find(tm);
        if (it == t.end()) {
            t.emplace(tm, c);
        } else {
            it->second = dom.add(it->second, c);
            if (dom.is_zero(it->second)) t.erase(it);
        }
    }
    // this += c * x^mon * g
    void axpy(const Dom& dom, const K& c, const Monomial& mon, const TVec& g) {
        for (const auto& [tm, gc] : g.t) add_term(dom, Term{tm.mon * mon, tm.pos}, dom.mul(c, gc));
    }
};

template <class Dom>
TVec<Dom> to_tvec(const Dom& dom, const FreeVec& f) {
    TVec<Dom> v;
    for (int i = 0; i < f.gens(); ++i)
        for (const auto& [m, c] : f.comps[i].terms()) {
            auto k = dom.from_rat(c);
            if (!dom.is_zero(k)) v.t.emplace(Term{m, i}, k);
        }
    return v;
}

template <class Dom>
FreeVec from_tvec(const Dom& dom, const TVec<Dom>& v, int gens, int k) {
    FreeVec f(gens, k);
    for (const auto& [tm, c] : v.t) f.comps[tm.pos].add_term(tm.mon, dom.to_rat(c));
    return f;
}

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class Dom>
class GBEngine {
public:
    using K = typename Dom::K;

    GBEngine(Dom dom, int gens, int k) : dom_(dom), gens_(gens), k_(k) {}

    const Dom& dom() const { return dom_; }
    int gens() const { return gens_; }
    int k() const { return k_; }
    const std::vector<TVec<Dom>>& basis() const { return basis_; }

    void compute(const std::vector<FreeVec>& relations, long step_budget) {
        for (const auto& r : relations) {
            TVec<Dom> v = to_tvec(dom_, r);
            if (!v.is_zero()) append(normalized(std::move(v)));
        }
        long steps = 0;
        while (!pairs_.empty()) {
            if (++steps > step_budget) throw BudgetExceeded("Groebner step budget exceeded");
            auto pk = *pairs_.begin();
            pairs_.erase(pairs_.begin());
            TVec<Dom> s = make_pair_poly(pk);
            reduce(s);
            if (!s.is_zero()) append(normalized(std::move(s)));
        }
        minimize();
        tail_reduce();
        std::sort(basis_.begin(), basis_.end(),
                  [](const TVec<Dom>& a, const TVec<Dom>& b) { return term_less(a.lead_term(), b.lead_term()); });
        verify(relations);
    }

    // Unique Euclidean-canonical normal form.
    TVec<Dom> normal_form(TVec<Dom> h) const {
        TVec<Dom> out;
        while (!h.is_zero()) {
            Term beta = h.lead_term();
            K c = h.lead_coeff();
            const TVec<Dom>* g = best_reducer(beta);
            if (g) {
                if constexpr (Dom::is_field) {
                    K q = dom_.mul(c, dom_.inv(g->lead_coeff()));
                    h.axpy(dom_, dom_.neg(q), beta.mon / g->lead_term().mon, *g);
                    continue;
                } else {
                    Int q, r;
                    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t(), g->lead_coeff().get_mpz_t());
                    if (q != 0) h.axpy(dom_, -q, beta.mon / g->lead_term().mon, *g);
                    if (r == 0) continue;
                    c = r;
                }
            }
            out.t.emplace(beta, c);
            h.t.erase(beta);
        }
        return out;
    }

    // c(beta): minimal positive leading coefficient among basis elements
    // whose leading term divides beta; 0 if none.  Over a field, 1/0.
    Int staircase_modulus(const Term& beta) const {
        if constexpr (Dom::is_field) {
            return best_reducer(beta) ? Int(1) : Int(0);
        } else {
            const TVec<Dom>* g = best_reducer(beta);
            if (!g) return Int(0);
            // divisibility invariant of a completed strong basis
            for (const auto& f : basis_)
                if (f.lead_term().divides(beta) && f.lead_coeff() % g->lead_coeff() != 0)
                    throw ModuleError("staircase: minimal leading coefficient does not divide a peer");
            return g->lead_coeff();
        }
    }

private:
    Dom dom_;
    int gens_, k_;
    std::vector<TVec<Dom>> basis_;

    struct PairKey {
        Monomial lcm;
        int i, j;
        bool gcd_pair;
        bool operator<(const PairKey& o) const {
            if (lcm != o.lcm) return grevlex_less(lcm, o.lcm);
            if (i != o.i) return i < o.i;
            if (j != o.j) return j < o.j;
            return gcd_pair < o.gcd_pair;
        }
    };
    std::set<PairKey> pairs_;

    TVec<Dom> normalized(TVec<Dom> v) const {
        if (v.is_zero()) return v;
        if constexpr (Dom::is_field) {
            K c = dom_.inv(v.lead_coeff());
            for (auto& [tm, coef] : v.t) coef = dom_.mul(coef, c);
        } else {
            if (v.lead_coeff() < 0)
                for (auto& [tm, coef] : v.t) coef = -coef;
        }
        return v;
    }

    void append(TVec<Dom> v) {
        int idx = static_cast<int>(basis_.size());
        basis_.push_back(std::move(v));
        for (int i = 0; i < idx; ++i) {
            const Term& a = basis_[i].lead_term();
            const Term& b = basis_[idx].lead_term();
            if (a.pos != b.pos) continue;
            Monomial l = a.mon.lcm(b.mon);
            pairs_.insert(PairKey{l, i, idx, false});
            if constexpr (!Dom::is_field) {
                const Int& ca = basis_[i].lead_coeff();
                const Int& cb = basis_[idx].lead_coeff();
                if (ca % cb != 0 && cb % ca != 0) pairs_.insert(PairKey{l, i, idx, true});
            }
        }
    }

    TVec<Dom> make_pair_poly(const PairKey& pk) const {
        const TVec<Dom>& f = basis_[pk.i];
        const TVec<Dom>& g = basis_[pk.j];
        Monomial mf = pk.lcm / f.lead_term().mon;
        Monomial mg = pk.lcm / g.lead_term().mon;
        TVec<Dom> s;
        if constexpr (Dom::is_field) {
            // monic basis: spair = x^mf f - x^mg g
            s.axpy(dom_, dom_.inv(f.lead_coeff()), mf, f);
            s.axpy(dom_, dom_.neg(dom_.inv(g.lead_coeff())), mg, g);
        } else {
            const Int& a = f.lead_coeff();
            const Int& b = g.lead_coeff();
            Int d, u, v;
            mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            if (pk.gcd_pair) {
                s.axpy(dom_, u, mf, f);
                s.axpy(dom_, v, mg, g);
            } else {
                s.axpy(dom_, b / d, mf, f);
                s.axpy(dom_, -(a / d), mg, g);
            }
        }
        return s;
    }

    void reduce(TVec<Dom>& h) const {
        TVec<Dom> nf = normal_form(std::move(h));
        h = std::move(nf);
    }

    const TVec<Dom>* best_reducer(const Term& beta) const {
        const TVec<Dom>* best = nullptr;
        for (const auto& g : basis_) {
            if (!g.lead_term().divides(beta)) continue;
            if constexpr (Dom::is_field) return &g;
            if (!best || g.lead_coeff() < best->lead_coeff()) best = &g;
        }
        return best;
    }

    void minimize() {
        std::vector<TVec<Dom>> kept;
        // scan in ascending leading-term order, smaller coefficient first
        std::vector<int> order(basis_.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const Term& ta = basis_[a].lead_term();
            const Term& tb = basis_[b].lead_term();
            if (ta != tb) return term_less(ta, tb);
            if constexpr (!Dom::is_field) {
                if (basis_[a].lead_coeff() != basis_[b].lead_coeff())
                    return basis_[a].lead_coeff() < basis_[b].lead_coeff();
            }
            return a < b;
        });
        for (int idx : order) {
            const TVec<Dom>& f = basis_[idx];
            bool redundant = false;
            for (const TVec<Dom>& g : kept) {
                if (!g.lead_term().divides(f.lead_term())) continue;
                if constexpr (Dom::is_field) {
                    redundant = true;
                } else {
                    if (f.lead_coeff() % g.lead_coeff() == 0) redundant = true;
                }
                if (redundant) break;
            }
            if (!redundant) kept.push_back(f);
        }
        basis_ = std::move(kept);
    }

    void tail_reduce() {
        for (auto& f : basis_) {
            TVec<Dom> tail;
            tail.t = f.t;
            tail.t.erase(tail.t.begin());
            TVec<Dom> nf = normal_form(std::move(tail));
            nf.t.emplace(f.lead_term(), f.lead_coeff());
            f.t = std::move(nf.t);
        }
    }

    void verify(const std::vector<FreeVec>& relations) const {
        for (const auto& r : relations)
            if (!normal_form(to_tvec(dom_, r)).is_zero())
                throw ModuleError("Groebner verification failed: relation does not reduce to zero");
        for (size_t i = 0; i < basis_.size(); ++i)
            for (size_t j = i + 1; j < basis_.size(); ++j) {
                const Term& a = basis_[i].lead_term();
                const Term& b = basis_[j].lead_term();
                if (a.pos != b.pos) continue;
                PairKey pk{a.mon.lcm(b.mon), static_cast<int>(i), static_cast<int>(j), false};
                if (!normal_form(make_pair_poly(pk)).is_zero())
                    throw ModuleError("Groebner verification failed: S-pair does not reduce to zero");
                if constexpr (!Dom::is_field) {
                    const Int& ca = basis_[i].lead_coeff();
                    const Int& cb = basis_[j].lead_coeff();
                    if (ca % cb != 0 && cb % ca != 0) {
                        pk.gcd_pair = true;
                        if (!normal_form(make_pair_poly(pk)).is_zero())
                            throw ModuleError("Groebner verification failed: gcd-pair does not reduce to zero");
                    }
                }
            }
    }
};

}  // namespace lenhil::detail
