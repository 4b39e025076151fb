#include "lenhil/slices.hpp"

#include "gb_engine.hpp"

#include "lenhil/hilbert.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>

namespace lenhil {

using detail::FpDom;
using detail::GBEngine;
using detail::QDom;
using detail::TVec;
using detail::ZDom;

std::string series_kind_name(SeriesKind k) {
    switch (k) {
        case SeriesKind::Growth: return "growth";
        case SeriesKind::GradedSlice: return "graded";
        case SeriesKind::IntrinsicStep: return "intrinsic";
        case SeriesKind::Samuel: return "samuel";
        case SeriesKind::MultiBox: return "multibox";
    }
    return "?";
}

long GrowthSeries::box_index(const std::vector<long>& m) const {
    long idx = 0;
    for (size_t j = 0; j < box.size(); ++j) {
        if (m[j] < 0 || m[j] > box[j]) throw SliceError("box index out of range");
        idx = idx * (box[j] + 1) + m[j];
    }
    return idx;
}

const LengthValue& GrowthSeries::at_box(const std::vector<long>& m) const {
    return values.at(static_cast<size_t>(box_index(m)));
}

namespace {

using Engine = std::variant<GBEngine<ZDom>, GBEngine<QDom>, GBEngine<FpDom>>;

// Admissible monomial sets for the slice kinds.
std::vector<Monomial> admissible(const RingSpec& ring, long n) {
    return monomials_up_to(ring.k, n, ring.weights);
}

struct DiagPiece {
    // lambda contribution of a Z / (b/a) piece (ideals aZ <= bZ ... a = 0 free)
    static void add(LengthValue& acc, int& free_rank, const Int& a, const Int& b) {
        // piece is aZ/bZ with bZ <= aZ (a | b); a == 0 and b == 0: nothing;
        // b == 0, a != 0: a free Z direction.
        if (a == 0) return;
        if (b == 0) {
            ++free_rank;
            return;
        }
        acc += lv_of_group_order(b / a);
    }
};

}  // namespace

struct ModuleSlicer::Impl {
    Presentation pres;  // lifted to Z when the input was over Z/n
    LengthSpec spec_;
    long budget;
    bool monomial_rels = false;
    bool homogeneous_rels = false;
    mutable std::optional<Engine> eng;

    bool field() const { return pres.ring.is_field(); }

    void engine_warmup(SeriesKind kind, const SubmoduleGens& v0) const {
        if (kind == SeriesKind::Samuel || kind == SeriesKind::GradedSlice) return;
        if (v0.is_builtin()) {
            require_builtin_ok(v0);
            const ModuleSlicer& q = builtin_quotient(*v0.z_plus_cS);
            q.impl_->engine_warmup(kind, q.impl_->builtin_image_v0());
            if (kind != SeriesKind::IntrinsicStep) (void)cached_scaled_lambda(*v0.z_plus_cS);
            return;
        }
        if (!pres.relations.empty()) (void)engine();
    }

    const Engine& engine() const {
        if (!eng) {
            try {
                build_engine();
            } catch (const detail::BudgetExceeded& e) {
                throw GroebnerError(std::string("BudgetExceeded: ") + e.what());
            }
        }
        return *eng;
    }

    void build_engine() const {
        {
            switch (pres.ring.base) {
                case BaseKind::Integers: {
                    GBEngine<ZDom> e(ZDom{}, pres.gens, pres.ring.k);
                    e.compute(pres.relations, budget);
                    eng.emplace(std::move(e));
                    break;
                }
                case BaseKind::Rationals: {
                    GBEngine<QDom> e(QDom{}, pres.gens, pres.ring.k);
                    e.compute(pres.relations, budget);
                    eng.emplace(std::move(e));
                    break;
                }
                case BaseKind::PrimeField: {
                    GBEngine<FpDom> e(FpDom{pres.ring.n.get_si()}, pres.gens, pres.ring.k);
                    e.compute(pres.relations, budget);
                    eng.emplace(std::move(e));
                    break;
                }
                default: throw SliceError("unsupported base");
            }
        }
    }

    // ---- monomial fast path -------------------------------------------

    bool v0_monomial(const SubmoduleGens& v0) const {
        if (v0.is_builtin()) return true;
        for (const auto& e : v0.elements) {
            int terms = 0;
            for (const auto& p : e.comps) terms += static_cast<int>(p.terms().size());
            if (terms != 1) return false;
        }
        return true;
    }

    // Coefficient as a nonzero integer for the monomial path: the numerator
    // over Z/Q, the residue mod p over F_p (zero coefficients are dropped by
    // the caller).
    Int mono_coeff(const Rat& c) const {
        if (pres.ring.base == BaseKind::PrimeField) {
            Int num = c.get_num() % pres.ring.n;
            if (num < 0) num += pres.ring.n;
            return num;  // denominator is invertible, irrelevant for presence
        }
        return abs(c.get_num());
    }

    // gcd of coefficients of monomial relations dividing beta (staircase of a
    // monomial relation set); 0 if none divides.
    Int mono_staircase(const Term& beta) const {
        Int g = 0;
        for (const auto& r : pres.relations)
            for (int i = 0; i < r.gens(); ++i)
                for (const auto& [m, c] : r.comps[i].terms())
                    if (i == beta.pos && m.divides(beta.mon)) {
                        Int cz = mono_coeff(c);
                        if (cz == 0) continue;
                        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cz.get_mpz_t());
                    }
        return g;
    }

    struct MonoGen {
        Term t;
        Int coeff;
    };
    std::vector<MonoGen> mono_gens(const SubmoduleGens& v0, int expand_bound) const {
        std::vector<MonoGen> out;
        for (const auto& e : v0.expand(pres, expand_bound))
            for (int i = 0; i < e.gens(); ++i)
                for (const auto& [m, c] : e.comps[i].terms()) {
                    Int cz = mono_coeff(c);
                    if (cz != 0) out.push_back(MonoGen{Term{m, i}, cz});
                }
        return out;
    }

    // reachable-position map: beta -> gcd of reaching generator coefficients
    std::map<Term, Int, TermGreater> mono_reach(const std::vector<MonoGen>& gens,
                                                const std::vector<Monomial>& adm) const {
        std::map<Term, Int, TermGreater> reach;
        for (const auto& g : gens)
            for (const auto& a : adm) {
                Term beta{g.t.mon * a, g.t.pos};
                auto [it, fresh] = reach.emplace(beta, g.coeff);
                if (!fresh) mpz_gcd(it->second.get_mpz_t(), it->second.get_mpz_t(), g.coeff.get_mpz_t());
            }
        return reach;
    }

    LengthValue mono_value(const std::map<Term, Int, TermGreater>& reach) const {
        if (field()) {
            long dim = 0;
            for (const auto& [beta, g] : reach)
                if (mono_staircase(beta) == 0) ++dim;
            return LengthValue::from_unit(Rat(dim));
        }
        LengthValue acc;
        int free_rank = 0;
        for (const auto& [beta, g] : reach) {
            Int c = mono_staircase(beta);
            Int a;
            mpz_gcd(a.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());  // gcd(g, 0) = g
            DiagPiece::add(acc, free_rank, a, c);
        }
        return finish(acc, free_rank);
    }

    LengthValue mono_growth(const SubmoduleGens& v0, const std::vector<Monomial>& adm,
                            int expand_bound) const {
        return mono_value(mono_reach(mono_gens(v0, expand_bound), adm));
    }

    LengthValue mono_intrinsic(const SubmoduleGens& v0, long n) const {
        int bound = static_cast<int>(n) + 1 + v0.max_degree();
        auto gens = mono_gens(v0, bound);
        auto hi = mono_reach(gens, admissible(pres.ring, n + 1));
        auto lo = mono_reach(gens, admissible(pres.ring, n));
        if (field()) {
            long dim = 0;
            for (const auto& [beta, g] : hi)
                if (mono_staircase(beta) == 0 && lo.find(beta) == lo.end()) ++dim;
            return LengthValue::from_unit(Rat(dim));
        }
        LengthValue acc;
        int free_rank = 0;
        for (const auto& [beta, ghi] : hi) {
            Int c = mono_staircase(beta);
            Int glo = 0;
            auto it = lo.find(beta);
            if (it != lo.end()) glo = it->second;
            Int a, b;
            mpz_gcd(a.get_mpz_t(), ghi.get_mpz_t(), c.get_mpz_t());
            mpz_gcd(b.get_mpz_t(), glo.get_mpz_t(), c.get_mpz_t());
            DiagPiece::add(acc, free_rank, a, b);
        }
        return finish(acc, free_rank);
    }

    // ---- shared helpers ------------------------------------------------

    LengthValue finish(const LengthValue& torsion, int free_rank) const {
        switch (spec_.kind) {
            case LengthKind::Rank: return LengthValue::from_unit(Rat(free_rank));
            case LengthKind::LogCard:
                if (free_rank > 0) return LengthValue::infinity();
                return torsion;
            case LengthKind::Dimension: throw SliceError("internal: Dimension on the Z path");
        }
        throw SliceError("unreachable");
    }

    LengthValue from_profile(const QuotientProfile& q) const {
        if (spec_.kind == LengthKind::Rank) return LengthValue::from_unit(Rat(q.free_rank_delta));
        if (q.free_rank_delta > 0) return LengthValue::infinity();
        return lv_of_group_order(q.torsion_order);
    }

    // ---- Z window machinery (general + homogeneous paths) ---------------

    // Window of terms, plain monomial degree <= w, descending term order.
    std::vector<Term> plain_window(int w) const {
        std::vector<int> unit(pres.ring.k, 1);
        std::vector<Term> terms;
        for (const auto& m : monomials_up_to(pres.ring.k, w, unit))
            for (int pos = 0; pos < pres.gens; ++pos) terms.push_back(Term{m, pos});
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return term_less(b, a); });
        return terms;
    }

    // Window of terms with weighted-total degree (wdeg + gen degree) <= w.
    std::vector<Term> total_window(long w, bool exact, long exact_deg) const {
        std::vector<Term> terms;
        for (int pos = 0; pos < pres.gens; ++pos) {
            long budget_deg = w - pres.gen_degree(pos);
            if (budget_deg < 0) continue;
            for (const auto& m : monomials_up_to(pres.ring.k, budget_deg, pres.ring.weights)) {
                long tot = m.weighted_degree(pres.ring.weights) + pres.gen_degree(pos);
                if (exact && tot != exact_deg) continue;
                terms.push_back(Term{m, pos});
            }
        }
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return term_less(b, a); });
        return terms;
    }

    static std::map<Term, int, TermGreater> index_of(const std::vector<Term>& terms) {
        std::map<Term, int, TermGreater> idx;
        for (size_t i = 0; i < terms.size(); ++i) idx.emplace(terms[i], static_cast<int>(i));
        return idx;
    }

    std::vector<Int> row_of(const FreeVec& f, const std::map<Term, int, TermGreater>& idx) const {
        std::vector<Int> row(idx.size(), 0);
        for (int i = 0; i < f.gens(); ++i)
            for (const auto& [m, c] : f.comps[i].terms()) {
                auto it = idx.find(Term{m, i});
                if (it == idx.end()) throw SliceError("internal: term escapes the window");
                row[it->second] = c.get_num();
            }
        return row;
    }

    FreeVec nf_z(const FreeVec& f) const {
        const auto& e = std::get<GBEngine<ZDom>>(engine());
        return detail::from_tvec(e.dom(), e.normal_form(detail::to_tvec(e.dom(), f)), pres.gens,
                                 pres.ring.k);
    }

    // One echelon row per constrained window position: the minimal-leading-
    // coefficient shift x^gamma h with lead beta.  Generates N cap window.
    IntMatrix k_rows(const std::vector<Term>& window,
                     const std::map<Term, int, TermGreater>& idx) const {
        const auto& e = std::get<GBEngine<ZDom>>(engine());
        IntMatrix out(0, static_cast<int>(window.size()));
        for (const Term& beta : window) {
            const TVec<ZDom>* best = nullptr;
            for (const auto& g : e.basis()) {
                if (!g.lead_term().divides(beta)) continue;
                if (!best || g.lead_coeff() < best->lead_coeff()) best = &g;
            }
            if (!best) continue;
            Monomial shift = beta.mon / best->lead_term().mon;
            std::vector<Int> row(window.size(), 0);
            for (const auto& [tm, c] : best->t) {
                auto it = idx.find(Term{tm.mon * shift, tm.pos});
                if (it == idx.end()) throw SliceError("internal: relation shift escapes the window");
                row[it->second] = c;
            }
            out.append_row(row);
        }
        return out;
    }

    // Homogeneous path: raw relation shifts inside a total-degree window.
    IntMatrix homogeneous_k_rows(const std::vector<Term>& window,
                                 const std::map<Term, int, TermGreater>& idx, long wtot,
                                 bool exact, long exact_deg) const {
        IntMatrix out(0, static_cast<int>(window.size()));
        for (const auto& r : pres.relations) {
            long tot = -1;
            for (int i = 0; i < r.gens(); ++i)
                for (const auto& [m, c] : r.comps[i].terms())
                    tot = std::max(tot, m.weighted_degree(pres.ring.weights) + pres.gen_degree(i));
            if (tot < 0) continue;
            long room = (exact ? exact_deg : wtot) - tot;
            if (room < 0) continue;
            for (const auto& g : monomials_up_to(pres.ring.k, room, pres.ring.weights)) {
                if (exact && g.weighted_degree(pres.ring.weights) != room) continue;
                out.append_row(row_of(r.shifted(g), idx));
            }
        }
        return out;
    }

    // generator rows for S_n V0 (Z paths); use_nf reduces through the GB
    std::vector<std::vector<Int>> gen_rows(const SubmoduleGens& v0, long n, int window_deg,
                                           const std::map<Term, int, TermGreater>& idx,
                                           bool use_nf) const {
        std::vector<std::vector<Int>> rows;
        auto elems = v0.expand(pres, window_deg);
        auto adm = admissible(pres.ring, n);
        for (const auto& v : elems) {
            int dv = 0;
            for (const auto& p : v.comps) dv = std::max(dv, p.degree());
            for (const auto& a : adm) {
                if (dv + a.degree() > window_deg) {
                    if (v0.is_builtin()) continue;  // single-term tail, entirely out of window
                    throw SliceError("internal: generator product escapes the window");
                }
                FreeVec w = v.shifted(a);
                if (use_nf) w = nf_z(w);
                rows.push_back(row_of(w, idx));
            }
        }
        return rows;
    }

    int v0_max_degree(const SubmoduleGens& v0) const { return v0.max_degree(); }

    // ---- Z path values ---------------------------------------------------

    // homogeneous relations: the in-window lattice of the relation submodule
    // is spanned by the raw shifts, no basis completion needed
    LengthValue z_growth_homogeneous(const SubmoduleGens& v0, long n) const {
        long wtot = 0;
        auto elems = v0.expand(pres, 0);
        for (const auto& v : elems)
            for (int i = 0; i < v.gens(); ++i)
                for (const auto& [m, c] : v.comps[i].terms())
                    wtot = std::max(wtot, m.weighted_degree(pres.ring.weights) + pres.gen_degree(i));
        wtot += n;
        auto window = total_window(wtot, false, 0);
        auto idx = index_of(window);
        IntMatrix k = homogeneous_k_rows(window, idx, wtot, false, 0);
        IntMatrix a = k;
        for (const auto& v : elems)
            for (const auto& mono : admissible(pres.ring, n)) a.append_row(row_of(v.shifted(mono), idx));
        return from_profile(quotient_profile(a, k));
    }

    LengthValue z_growth(const SubmoduleGens& v0, long n) const {
        if (homogeneous_rels && !v0.is_builtin()) return z_growth_homogeneous(v0, n);
        int w = static_cast<int>(n) + v0_max_degree(v0);
        auto window = plain_window(w);
        auto idx = index_of(window);
        bool use_nf = !pres.relations.empty();
        IntMatrix k = use_nf ? k_rows(window, idx) : IntMatrix(0, static_cast<int>(window.size()));
        IntMatrix a = k;
        for (auto& row : gen_rows(v0, n, w, idx, use_nf)) a.append_row(row);
        return from_profile(quotient_profile(a, k));
    }

    LengthValue z_intrinsic(const SubmoduleGens& v0, long n) const {
        int w = static_cast<int>(n) + 1 + v0_max_degree(v0);
        auto window = plain_window(w);
        auto idx = index_of(window);
        IntMatrix k = pres.relations.empty() ? IntMatrix(0, static_cast<int>(window.size()))
                                             : k_rows(window, idx);
        IntMatrix lo = k;
        for (auto& row : gen_rows(v0, n, w, idx, !pres.relations.empty())) lo.append_row(row);
        IntMatrix hi = lo;
        for (auto& row : gen_rows(v0, n + 1, w, idx, !pres.relations.empty())) hi.append_row(row);
        return from_profile(quotient_profile(hi, lo));
    }

    // lambda(Z^window / rows) for the Samuel / graded-slice cokernels
    LengthValue window_coker(const IntMatrix& rows, size_t window_size) const {
        IntMatrix m = rows;
        HnfProfile p = hnf_inplace(m);
        int free_rank = static_cast<int>(window_size) - p.rank();
        if (spec_.kind == LengthKind::Rank) return LengthValue::from_unit(Rat(free_rank));
        if (free_rank > 0) return LengthValue::infinity();
        LengthValue acc;
        for (const auto& [col, piv] : p.pivots) acc += lv_of_group_order(piv);
        return acc;
    }

    // ---- field echelon machinery ----------------------------------------

    template <class Dom>
    struct Echelon {
        const Dom* dom;
        std::map<Term, TVec<Dom>, TermGreater> rows;  // keyed by lead term, monic
        long rank = 0;

        void insert(TVec<Dom> v) {
            while (!v.is_zero()) {
                auto it = rows.find(v.lead_term());
                if (it == rows.end()) {
                    typename Dom::K c = dom->inv(v.lead_coeff());
                    for (auto& [tm, coef] : v.t) coef = dom->mul(coef, c);
                    rows.emplace(v.lead_term(), std::move(v));
                    ++rank;
                    return;
                }
                typename Dom::K c = v.lead_coeff();
                v.axpy(*dom, dom->neg(c), Monomial::one(it->second.lead_term().mon.k()), it->second);
            }
        }
    };

    template <class Dom>
    LengthValue field_growth_t(const GBEngine<Dom>& e, const SubmoduleGens& v0, long n) const {
        Echelon<Dom> ech{&e.dom(), {}, 0};
        int w = static_cast<int>(n) + v0_max_degree(v0);
        for (const auto& v : v0.expand(pres, w))
            for (const auto& a : admissible(pres.ring, n))
                ech.insert(e.normal_form(detail::to_tvec(e.dom(), v.shifted(a))));
        return LengthValue::from_unit(Rat(ech.rank));
    }

    template <class Dom>
    LengthValue field_intrinsic_t(const GBEngine<Dom>& e, const SubmoduleGens& v0, long n) const {
        Echelon<Dom> ech{&e.dom(), {}, 0};
        int w = static_cast<int>(n) + 1 + v0_max_degree(v0);
        auto elems = v0.expand(pres, w);
        for (const auto& v : elems)
            for (const auto& a : admissible(pres.ring, n))
                ech.insert(e.normal_form(detail::to_tvec(e.dom(), v.shifted(a))));
        long lo = ech.rank;
        for (const auto& v : elems)
            for (const auto& a : admissible(pres.ring, n + 1))
                if (a.weighted_degree(pres.ring.weights) > n)
                    ech.insert(e.normal_form(detail::to_tvec(e.dom(), v.shifted(a))));
        return LengthValue::from_unit(Rat(ech.rank - lo));
    }

    template <class Dom>
    LengthValue field_boxed_t(const GBEngine<Dom>& e, const SubmoduleGens& v0,
                              const std::vector<Monomial>& adm) const {
        Echelon<Dom> ech{&e.dom(), {}, 0};
        long total = 0;
        for (const auto& a : adm) total = std::max<long>(total, a.degree());
        for (const auto& v : v0.expand(pres, static_cast<int>(total) + v0_max_degree(v0)))
            for (const auto& a : adm) ech.insert(e.normal_form(detail::to_tvec(e.dom(), v.shifted(a))));
        return LengthValue::from_unit(Rat(ech.rank));
    }

    // Samuel / graded slices over a field: coker rank of explicit rows.
    template <class Dom>
    LengthValue field_coker_t(const Dom& dom, const std::vector<FreeVec>& rows, size_t window) const {
        Echelon<Dom> ech{&dom, {}, 0};
        for (const auto& r : rows) ech.insert(detail::to_tvec(dom, r));
        return LengthValue::from_unit(Rat(static_cast<long>(window) - ech.rank));
    }

    template <class F>
    LengthValue with_field_engine(F&& f) const {
        const Engine& e = engine();
        if (std::holds_alternative<GBEngine<QDom>>(e)) return f(std::get<GBEngine<QDom>>(e));
        if (std::holds_alternative<GBEngine<FpDom>>(e)) return f(std::get<GBEngine<FpDom>>(e));
        throw SliceError("internal: field path on non-field base");
    }

    // ---- the built-in family Z + cS ---------------------------------------
    //
    // S_n(Z + cS) = S_n * 1 + cM exactly, so growth decomposes as
    // lambda(cM) + lambda(image of S_n * 1 in M/cM) and the intrinsic steps
    // are the intrinsic steps of M/cM with V0 = {1}.

    mutable std::map<Int, std::unique_ptr<ModuleSlicer>> builtin_cache;

    const ModuleSlicer& builtin_quotient(const Int& c) const {
        auto it = builtin_cache.find(c);
        if (it == builtin_cache.end()) {
            Presentation q = pres;
            for (int i = 0; i < q.gens; ++i) {
                FreeVec v(q.gens, q.ring.k);
                v.comps[i] = Poly::constant(q.ring.k, Rat(c));
                q.relations.push_back(std::move(v));
            }
            it = builtin_cache
                     .emplace(c, std::make_unique<ModuleSlicer>(std::move(q), spec_, budget))
                     .first;
        }
        return *it->second;
    }

    // lambda(cM): fit the growth of {c * e_i}; a constant fit is the exact
    // value, any positive-degree fit means the submodule is infinite.
    LengthValue lambda_of_scaled_module(const Int& c) const;

    mutable std::map<Int, LengthValue> scaled_lambda_cache;

    const LengthValue& cached_scaled_lambda(const Int& c) const {
        auto it = scaled_lambda_cache.find(c);
        if (it == scaled_lambda_cache.end())
            it = scaled_lambda_cache.emplace(c, lambda_of_scaled_module(c)).first;
        return it->second;
    }

    SubmoduleGens builtin_image_v0() const {
        std::vector<FreeVec> elems;
        for (int i = 0; i < pres.gens; ++i) {
            FreeVec v(pres.gens, pres.ring.k);
            v.comps[i] = Poly::constant(pres.ring.k, 1);
            elems.push_back(std::move(v));
        }
        return SubmoduleGens::of(std::move(elems));
    }

    void require_builtin_ok(const SubmoduleGens& v0) const {
        if (field()) throw SliceError("Z + cS requires an integer base");
        if (pres.gens != 1) throw SliceError("Z + cS requires a cyclic presentation");
        (void)v0;
    }

    // ---- entry points -----------------------------------------------------

    LengthValue growth(const SubmoduleGens& v0, long n) const {
        if (v0.is_builtin()) {
            require_builtin_ok(v0);
            const ModuleSlicer& q = builtin_quotient(*v0.z_plus_cS);
            return cached_scaled_lambda(*v0.z_plus_cS) +
                   q.impl_->growth(q.impl_->builtin_image_v0(), n);
        }
        if (monomial_rels && v0_monomial(v0)) {
            int bound = static_cast<int>(n) + v0.max_degree();
            return mono_growth(v0, admissible(pres.ring, n), bound);
        }
        if (field()) return with_field_engine([&](const auto& e) { return field_growth_t(e, v0, n); });
        return z_growth(v0, n);
    }

    LengthValue intrinsic(const SubmoduleGens& v0, long n) const {
        if (v0.is_builtin()) {
            require_builtin_ok(v0);
            const ModuleSlicer& q = builtin_quotient(*v0.z_plus_cS);
            return q.impl_->intrinsic(q.impl_->builtin_image_v0(), n);
        }
        if (monomial_rels && v0_monomial(v0)) return mono_intrinsic(v0, n);
        if (field())
            return with_field_engine([&](const auto& e) { return field_intrinsic_t(e, v0, n); });
        return z_intrinsic(v0, n);
    }

    LengthValue samuel(long n) const {
        // ambient: all terms of plain degree <= n; relations: x^a r_j with
        // |a| <= n, terms of degree > n discarded
        std::vector<int> unit(pres.ring.k, 1);
        std::vector<Term> window;
        for (const auto& m : monomials_up_to(pres.ring.k, n, unit))
            for (int pos = 0; pos < pres.gens; ++pos) window.push_back(Term{m, pos});
        std::sort(window.begin(), window.end(),
                  [](const Term& a, const Term& b) { return term_less(b, a); });
        auto idx = index_of(window);

        std::vector<FreeVec> rows;
        for (const auto& r : pres.relations)
            for (const auto& a : monomials_up_to(pres.ring.k, n, unit)) {
                FreeVec s = r.shifted(a);
                FreeVec trunc(pres.gens, pres.ring.k);
                for (int i = 0; i < s.gens(); ++i)
                    for (const auto& [m, c] : s.comps[i].terms())
                        if (m.degree() <= n) trunc.comps[i].add_term(m, c);
                if (!trunc.is_zero()) rows.push_back(std::move(trunc));
            }

        if (field()) {
            if (pres.ring.base == BaseKind::Rationals)
                return field_coker_t(QDom{}, rows, window.size());
            return field_coker_t(FpDom{pres.ring.n.get_si()}, rows, window.size());
        }
        IntMatrix m(0, static_cast<int>(window.size()));
        for (const auto& r : rows) m.append_row(row_of(r, idx));
        return window_coker(m, window.size());
    }

    LengthValue graded_slice(long n) const {
        if (!homogeneous_rels) throw SliceError("graded slices need a homogeneous presentation");
        auto window = total_window(n, true, n);
        auto idx = index_of(window);
        if (field()) {
            std::vector<FreeVec> rows;
            for (const auto& r : pres.relations) {
                long tot = -1;
                for (int i = 0; i < r.gens(); ++i)
                    for (const auto& [m, c] : r.comps[i].terms())
                        tot = std::max(tot, m.weighted_degree(pres.ring.weights) + pres.gen_degree(i));
                long room = n - tot;
                if (tot < 0 || room < 0) continue;
                for (const auto& g : monomials_up_to(pres.ring.k, room, pres.ring.weights))
                    if (g.weighted_degree(pres.ring.weights) == room) rows.push_back(r.shifted(g));
            }
            if (pres.ring.base == BaseKind::Rationals)
                return field_coker_t(QDom{}, rows, window.size());
            return field_coker_t(FpDom{pres.ring.n.get_si()}, rows, window.size());
        }
        IntMatrix k = homogeneous_k_rows(window, idx, n, true, n);
        return window_coker(k, window.size());
    }

    LengthValue boxed(const SubmoduleGens& v0, const std::vector<int>& partition,
                      const std::vector<long>& box) const {
        for (int w : pres.ring.weights)
            if (w != 1) throw SliceError("multibox slices need unit weights");
        if (v0.is_builtin()) {
            require_builtin_ok(v0);
            const ModuleSlicer& q = builtin_quotient(*v0.z_plus_cS);
            return cached_scaled_lambda(*v0.z_plus_cS) +
                   q.impl_->boxed(q.impl_->builtin_image_v0(), partition, box);
        }
        auto adm = monomials_boxed(pres.ring.k, partition, box);
        if (monomial_rels && v0_monomial(v0)) {
            long total = 0;
            for (long b : box) total += b;
            return mono_value(mono_reach(mono_gens(v0, static_cast<int>(total) + v0.max_degree()), adm));
        }
        if (field())
            return with_field_engine([&](const auto& e) { return field_boxed_t(e, v0, adm); });
        long total = 0;
        for (long b : box) total += b;
        int w = static_cast<int>(total) + v0_max_degree(v0);
        auto window = plain_window(w);
        auto idx = index_of(window);
        IntMatrix k = k_rows(window, idx);
        IntMatrix a = k;
        for (const auto& v : v0.expand(pres, w))
            for (const auto& mono : adm) a.append_row(row_of(nf_z(v.shifted(mono)), idx));
        return from_profile(quotient_profile(a, k));
    }
};

LengthValue ModuleSlicer::Impl::lambda_of_scaled_module(const Int& c) const {
    std::vector<FreeVec> gens;
    for (int i = 0; i < pres.gens; ++i) {
        FreeVec v(pres.gens, pres.ring.k);
        v.comps[i] = Poly::constant(pres.ring.k, Rat(c));
        gens.push_back(std::move(v));
    }
    SubmoduleGens cg = SubmoduleGens::of(std::move(gens));
    int k = pres.ring.k;
    int guard = k + 3;
    long n_max = std::max<long>(2 * k + 8, k + guard + 2);
    while (true) {
        GrowthSeries s;
        s.kind = SeriesKind::Growth;
        s.spec = spec_;
        bool infinite = false;
        for (long n = 0; n <= n_max && !infinite; ++n) {
            LengthValue v = growth(cg, n);
            infinite = v.is_infinite();
            s.values.push_back(std::move(v));
        }
        if (infinite) return LengthValue::infinity();
        try {
            EventualPolynomial q = fit_eventual_polynomial(s, k, guard);
            if (q.total_degree() >= 1) return LengthValue::infinity();
            if (q.coeffs.empty()) return LengthValue();
            return q.evaluate_length(q.stable_from);
        } catch (const NotStabilized&) {
            if (n_max >= 64) throw SliceError("Z + cS: lambda(cM) did not stabilize");
            n_max *= 2;
        }
    }
}

ModuleSlicer::ModuleSlicer(Presentation pres, LengthSpec spec, long gb_step_budget)
    : impl_(std::make_unique<Impl>()) {
    pres.validate();
    spec.validate(pres.ring);
    impl_->pres = lift_to_integers(reduce_coefficients(pres));
    impl_->spec_ = spec;
    impl_->budget = gb_step_budget;
    impl_->monomial_rels = impl_->pres.relations_monomial();
    impl_->homogeneous_rels = impl_->pres.relations_homogeneous();
}

ModuleSlicer::~ModuleSlicer() = default;
ModuleSlicer::ModuleSlicer(ModuleSlicer&&) noexcept = default;

const Presentation& ModuleSlicer::lifted() const { return impl_->pres; }
const LengthSpec& ModuleSlicer::spec() const { return impl_->spec_; }

LengthValue ModuleSlicer::growth_value(const SubmoduleGens& v0, long n) const {
    return impl_->growth(v0, n);
}
LengthValue ModuleSlicer::intrinsic_step_value(const SubmoduleGens& v0, long n) const {
    return impl_->intrinsic(v0, n);
}
LengthValue ModuleSlicer::samuel_value(long n) const { return impl_->samuel(n); }
LengthValue ModuleSlicer::multibox_value(const SubmoduleGens& v0, const std::vector<int>& partition,
                                         const std::vector<long>& box) const {
    return impl_->boxed(v0, partition, box);
}
LengthValue ModuleSlicer::graded_slice_value(long n) const { return impl_->graded_slice(n); }

namespace {

void run_indexed(long count, int threads, const std::function<void(long)>& work) {
    if (threads <= 1 || count <= 1) {
        for (long i = 0; i < count; ++i) work(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    int nt = std::min<long>(threads, count);
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1)) work(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

GrowthSeries ModuleSlicer::series(const SubmoduleGens& v0, long n_max, SeriesKind kind,
                                  int threads) const {
    if (n_max < 0) throw SliceError("series: n_max must be >= 0");
    if (kind == SeriesKind::MultiBox) throw SliceError("series: use multibox_series");
    GrowthSeries out;
    out.kind = kind;
    out.spec = impl_->spec_;
    out.weights = impl_->pres.ring.weights;
    out.values.assign(static_cast<size_t>(n_max) + 1, LengthValue());
    {
        std::ostringstream os;
        os << series_kind_name(kind) << " series, " << impl_->pres.gens << " generators, "
           << impl_->pres.relations.size() << " relations";
        out.source = os.str();
    }

    auto value_at = [&](long n) -> LengthValue {
        switch (kind) {
            case SeriesKind::Growth: return impl_->growth(v0, n);
            case SeriesKind::IntrinsicStep: return impl_->intrinsic(v0, n);
            case SeriesKind::Samuel: return impl_->samuel(n);
            case SeriesKind::GradedSlice: return impl_->graded_slice(n);
            default: throw SliceError("unreachable");
        }
    };

    if (kind == SeriesKind::Growth && threads <= 1) {
        // infinity absorbs upward; skip computing past the first infinite value
        bool inf = false;
        for (long n = 0; n <= n_max; ++n) {
            if (inf) {
                out.values[n] = LengthValue::infinity();
                continue;
            }
            out.values[n] = value_at(n);
            inf = out.values[n].is_infinite();
        }
    } else {
        impl_->engine_warmup(kind, v0);
        run_indexed(n_max + 1, threads, [&](long n) { out.values[n] = value_at(n); });
        if (kind == SeriesKind::Growth) {
            bool inf = false;
            for (auto& v : out.values) {
                if (inf) v = LengthValue::infinity();
                inf = inf || v.is_infinite();
            }
        }
    }

    if (kind == SeriesKind::Growth) {
        for (size_t i = 0; i + 1 < out.values.size(); ++i) {
            Cmp c = lv_compare(out.values[i], out.values[i + 1]);
            if (c == Cmp::Greater || c == Cmp::Incomparable)
                throw SliceError("growth series is not monotone: internal error");
        }
    }
    return out;
}

GrowthSeries ModuleSlicer::multibox_series(const SubmoduleGens& v0, const std::vector<int>& partition,
                                           const std::vector<long>& box, int threads) const {
    GrowthSeries out;
    out.kind = SeriesKind::MultiBox;
    out.spec = impl_->spec_;
    out.weights = impl_->pres.ring.weights;
    out.partition = partition;
    out.box = box;
    out.source = "multibox series";
    long count = 1;
    for (long b : box) count *= (b + 1);
    out.values.assign(static_cast<size_t>(count), LengthValue());
    impl_->engine_warmup(SeriesKind::MultiBox, v0);
    run_indexed(count, threads, [&](long flat) {
        std::vector<long> m(box.size());
        long rest = flat;
        for (size_t j = box.size(); j-- > 0;) {
            m[j] = rest % (box[j] + 1);
            rest /= (box[j] + 1);
        }
        out.values[flat] = impl_->boxed(v0, partition, m);
    });
    return out;
}

IntMatrix ModuleSlicer::window_generators(const SubmoduleGens& v0, long n, int window_degree) const {
    auto window = impl_->plain_window(window_degree);
    auto idx = Impl::index_of(window);
    IntMatrix out(0, static_cast<int>(window.size()));
    bool use_nf = !impl_->pres.relations.empty();
    for (auto& row : impl_->gen_rows(v0, n, window_degree, idx, use_nf)) out.append_row(row);
    return out;
}

IntMatrix ModuleSlicer::window_relations(int window_degree) const {
    auto window = impl_->plain_window(window_degree);
    auto idx = Impl::index_of(window);
    if (impl_->pres.relations.empty()) return IntMatrix(0, static_cast<int>(window.size()));
    return impl_->k_rows(window, idx);
}

std::vector<Term> ModuleSlicer::window_terms(int window_degree) const {
    return impl_->plain_window(window_degree);
}

LengthValue ModuleSlicer::length_of_window_quotient(const IntMatrix& a_extra, int window_degree) const {
    IntMatrix k = window_relations(window_degree);
    IntMatrix a = k.stacked(a_extra);
    return impl_->from_profile(quotient_profile(a, k));
}

LengthValue ModuleSlicer::field_span_dimension(
    const std::vector<std::pair<SubmoduleGens, long>>& families) const {
    return impl_->with_field_engine([&](const auto& e) {
        Impl::Echelon<std::decay_t<decltype(e.dom())>> ech{&e.dom(), {}, 0};
        for (const auto& [v0, bound] : families) {
            int w = static_cast<int>(bound) + v0.max_degree();
            for (const auto& v : v0.expand(impl_->pres, w))
                for (const auto& a : admissible(impl_->pres.ring, bound))
                    ech.insert(e.normal_form(detail::to_tvec(e.dom(), v.shifted(a))));
        }
        return LengthValue::from_unit(Rat(ech.rank));
    });
}

LengthValue growth_value(const Presentation& m, const SubmoduleGens& v0, long n, LengthSpec spec) {
    return ModuleSlicer(m, spec).growth_value(v0, n);
}
LengthValue intrinsic_step_value(const Presentation& m, const SubmoduleGens& v0, long n,
                                 LengthSpec spec) {
    return ModuleSlicer(m, spec).intrinsic_step_value(v0, n);
}
LengthValue samuel_value(const Presentation& m, long n, LengthSpec spec) {
    return ModuleSlicer(m, spec).samuel_value(n);
}
LengthValue multibox_value(const Presentation& m, const SubmoduleGens& v0,
                           const std::vector<int>& partition, const std::vector<long>& box,
                           LengthSpec spec) {
    return ModuleSlicer(m, spec).multibox_value(v0, partition, box);
}
GrowthSeries series(const Presentation& m, const SubmoduleGens& v0, long n_max, SeriesKind kind,
                    LengthSpec spec, int threads) {
    return ModuleSlicer(m, spec).series(v0, n_max, kind, threads);
}

}  // namespace lenhil
