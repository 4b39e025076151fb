#include "lenhil/oracles.hpp"

#include <map>
#include <set>
#include <sstream>

namespace lenhil {

namespace {

// Plain textbook integer row echelon: fixed column order, no pivot strategy.
// Deliberately separate from the Kannan-Bachem HNF in linalg.
struct PlainEchelon {
    std::vector<std::vector<Int>> rows;  // echelon rows, pivot per row
    std::vector<int> pivot_col;

    explicit PlainEchelon(const IntMatrix& m) {
        std::vector<std::vector<Int>> work;
        for (int i = 0; i < m.rows(); ++i) work.push_back(m.row(i));
        int cols = m.cols();
        int r = 0;
        for (int c = 0; c < cols; ++c) {
            // gcd everything below r into one row at r by repeated subtraction
            while (true) {
                int nz = -1;
                for (size_t i = r; i < work.size(); ++i)
                    if (work[i][c] != 0 &&
                        (nz < 0 || mpz_cmpabs(work[i][c].get_mpz_t(), work[nz][c].get_mpz_t()) < 0))
                        nz = static_cast<int>(i);
                if (nz < 0) break;
                std::swap(work[r], work[nz]);
                bool done = true;
                for (size_t i = r + 1; i < work.size(); ++i) {
                    if (work[i][c] == 0) continue;
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), work[i][c].get_mpz_t(), work[r][c].get_mpz_t());
                    for (int j = 0; j < cols; ++j) work[i][j] -= q * work[r][j];
                    if (work[i][c] != 0) done = false;
                }
                if (done) break;
            }
            if (static_cast<size_t>(r) < work.size() && work[r][c] != 0) {
                if (work[r][c] < 0)
                    for (auto& x : work[r]) x = -x;
                rows.push_back(work[r]);
                pivot_col.push_back(c);
                ++r;
            }
            if (static_cast<size_t>(r) >= work.size()) break;
        }
    }

    int rank() const { return static_cast<int>(rows.size()); }

    // canonical coset representative: residues in [0, pivot) at pivot columns
    std::vector<Int> canonical(std::vector<Int> v) const {
        for (size_t r = 0; r < rows.size(); ++r) {
            int c = pivot_col[r];
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), v[c].get_mpz_t(), rows[r][c].get_mpz_t());
            if (q != 0)
                for (size_t j = 0; j < v.size(); ++j) v[j] -= q * rows[r][j];
        }
        return v;
    }
};

}  // namespace

std::optional<Int> brute_force_group_order(const IntMatrix& rel, long cap) {
    int g = rel.cols();
    if (g == 0) return Int(1);
    PlainEchelon ech(rel);
    if (ech.rank() < g) return std::nullopt;  // free direction

    // pivot-product route
    Int det_route = 1;
    for (int r = 0; r < ech.rank(); ++r) det_route *= ech.rows[r][ech.pivot_col[r]];
    if (det_route > cap) throw TooLarge("brute_force_group_order: order beyond cap");

    // coset enumeration from 0 over the unit generators
    std::set<std::vector<Int>> seen;
    std::vector<std::vector<Int>> frontier{ech.canonical(std::vector<Int>(g, 0))};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<std::vector<Int>> next;
        for (const auto& v : frontier)
            for (int i = 0; i < g; ++i)
                for (int s : {1, -1}) {
                    auto w = v;
                    w[i] += s;
                    w = ech.canonical(std::move(w));
                    if (seen.insert(w).second) {
                        if (static_cast<long>(seen.size()) > cap)
                            throw TooLarge("brute_force_group_order: enumeration beyond cap");
                        next.push_back(std::move(w));
                    }
                }
        frontier = std::move(next);
    }
    Int order(static_cast<long>(seen.size()));
    if (order != det_route)
        throw ModuleError("brute_force_group_order: enumeration disagrees with the pivot product");
    return order;
}

Int binom_series_coeff(const std::vector<int>& gamma, const std::vector<long>& n) {
    // iterated 1-D convolution of 1/(1-t)^gamma_i prefixes
    if (gamma.size() != n.size()) throw ModuleError("binom_series_coeff: arity mismatch");
    Int acc = 1;
    for (size_t i = 0; i < gamma.size(); ++i) {
        // coefficient of t^{n_i} in 1/(1-t)^{gamma_i} by convolution from scratch
        std::vector<Int> series(n[i] + 1, 0);
        series[0] = 1;  // gamma = 0 gives the constant series 1
        for (int rep = 0; rep < gamma[i]; ++rep) {
            std::vector<Int> next(n[i] + 1, 0);
            // multiply by 1/(1-t): prefix sums
            Int run = 0;
            for (long m = 0; m <= n[i]; ++m) {
                run += series[m];
                next[m] = run;
            }
            series = std::move(next);
        }
        acc *= series[n[i]];
    }
    return acc;
}

namespace {

Presentation quotient_presentation(const Presentation& b, const SubmoduleGens& a0) {
    Presentation c = b;
    for (const auto& e : a0.elements) c.relations.push_back(e);
    c.gen_degrees.reset();  // quotient relations are generally inhomogeneous
    c.validate();
    return c;
}

}  // namespace

CheckReport additivity_check(const Presentation& b, const SubmoduleGens& a0, LengthSpec spec,
                             long slice_n_max, long max_samples) {
    CheckReport rep;
    std::ostringstream os;
    if (a0.is_builtin()) throw ModuleError("additivity_check: explicit A0 generators required");

    SubmoduleGens v0b = SubmoduleGens::unit_generators(b);
    MuResult mb = mu(b, v0b, spec, max_samples);
    MuResult ma = mu(b, a0, spec, max_samples);  // growth of A = S*A0 inside B
    Presentation c = quotient_presentation(b, a0);
    MuResult mc = mu(c, SubmoduleGens::unit_generators(c), spec, max_samples);
    rep.mu_b = mb.mu;
    rep.mu_a = ma.mu;
    rep.mu_c = mc.mu;

    if (mu_oplus(ma.mu, mc.mu) != mb.mu) {
        rep.ok = false;
        os << "mu mismatch: mu(A)=" << ma.mu.str() << " mu(C)=" << mc.mu.str()
           << " oplus=" << mu_oplus(ma.mu, mc.mu).str() << " mu(B)=" << mb.mu.str() << "; ";
    }

    // slice-level: lambda(A_n) + lambda(C_n) = lambda(B_n), A_n = A cap B_n.
    // A cap B_n is the increasing union over w of (degree-w part of A) cap B_n;
    // widen the window until the value is stable for two steps.
    ModuleSlicer sb(b, spec);
    ModuleSlicer sc(c, spec);
    int da = a0.max_degree();
    auto lambda_a_n = [&](long n) {
        LengthValue prev;
        int stable = 0;
        for (int slack = 2; slack <= 14; ++slack) {
            LengthValue cur;
            if (b.ring.is_field()) {
                // dim(A_w cap B_n) = dim A_w + dim B_n - dim(A_w + B_n)
                long wa = n + da + slack;
                LengthValue ra = sb.field_span_dimension({{a0, wa}});
                LengthValue rb = sb.field_span_dimension({{v0b, n}});
                LengthValue rab = sb.field_span_dimension({{a0, wa}, {v0b, n}});
                cur = LengthValue::from_unit(ra.unit() + rb.unit() - rab.unit());
            } else {
                int w = static_cast<int>(n + da + slack);
                IntMatrix k = sb.window_relations(w);
                IntMatrix aw = sb.window_generators(a0, w - da, w).stacked(k);
                IntMatrix bn = sb.window_generators(v0b, n, w).stacked(k);
                IntMatrix inter = lattice_intersection(aw, bn);
                cur = sb.length_of_window_quotient(inter, w);
            }
            if (slack > 2 && cur == prev) {
                if (++stable >= 2) return cur;
            } else {
                stable = 0;
            }
            prev = cur;
        }
        return prev;
    };
    for (long n = 0; n <= slice_n_max; ++n) {
        LengthValue lb = sb.growth_value(v0b, n);
        LengthValue lc = sc.growth_value(SubmoduleGens::unit_generators(c), n);
        LengthValue la = lambda_a_n(n);
        if (la + lc != lb) {
            rep.ok = false;
            os << "slice " << n << ": lambda(A_n)=" << la.str() << " + lambda(C_n)=" << lc.str()
               << " != lambda(B_n)=" << lb.str() << "; ";
        }
    }
    rep.detail = os.str();
    return rep;
}

CheckReport entropy_additivity_check(const Presentation& b, const SubmoduleGens& a0, LengthSpec spec,
                                     long max_samples) {
    CheckReport rep;
    std::ostringstream os;
    SubmoduleGens v0b = SubmoduleGens::unit_generators(b);
    MuResult mb = mu(b, v0b, spec, max_samples);
    MuResult ma = mu(b, a0, spec, max_samples);
    Presentation c = quotient_presentation(b, a0);
    MuResult mc = mu(c, SubmoduleGens::unit_generators(c), spec, max_samples);
    rep.mu_b = mb.mu;
    rep.mu_a = ma.mu;
    rep.mu_c = mc.mu;
    for (int d = 0; d <= b.ring.k; ++d) {
        LengthValue hb = entropy_d(mb.mu, d);
        LengthValue ha = entropy_d(ma.mu, d);
        LengthValue hc = entropy_d(mc.mu, d);
        if (ha + hc != hb) {
            rep.ok = false;
            os << "d=" << d << ": h(A)+h(C)=" << (ha + hc).str() << " != h(B)=" << hb.str() << "; ";
        }
    }
    rep.detail = os.str();
    return rep;
}

Presentation random_presentation(std::mt19937_64& rng, const RingSpec& ring) {
    auto ri = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
    Presentation p;
    p.ring = ring;
    p.gens = ri(1, 3);
    int nrel = ri(0, 4);
    for (int r = 0; r < nrel; ++r) {
        std::map<std::pair<int, std::vector<int>>, int> slots;
        int terms = ri(1, 3);
        for (int t = 0; t < terms; ++t) {
            int pos = ri(0, p.gens - 1);
            Monomial m = Monomial::one(ring.k);
            int deg = ri(0, 3);
            for (int d = 0; d < deg; ++d) m.e[ri(0, ring.k - 1)] += 1;
            slots[{pos, m.e}] = ri(-5, 5);  // duplicates overwrite, keeping |c| <= 5
        }
        FreeVec v(p.gens, ring.k);
        for (const auto& [key, c] : slots)
            if (c != 0) v.comps[key.first].add_term(Monomial(key.second), Rat(c));
        if (!v.is_zero()) p.relations.push_back(std::move(v));
    }
    p.validate();
    return p;
}

SubmoduleGens random_submodule_gens(std::mt19937_64& rng, const Presentation& p) {
    auto ri = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
    int count = ri(1, 2);
    std::vector<FreeVec> elems;
    for (int i = 0; i < count; ++i) {
        FreeVec v(p.gens, p.ring.k);
        int terms = ri(1, 2);
        for (int t = 0; t < terms; ++t) {
            int pos = ri(0, p.gens - 1);
            Monomial m = Monomial::one(p.ring.k);
            int deg = ri(0, 2);
            for (int d = 0; d < deg; ++d) m.e[ri(0, p.ring.k - 1)] += 1;
            int c = ri(-5, 5);
            if (c != 0) v.comps[pos].add_term(m, Rat(c));
        }
        if (v.is_zero()) v.comps[ri(0, p.gens - 1)] = Poly::constant(p.ring.k, 1);
        elems.push_back(std::move(v));
    }
    return SubmoduleGens::of(std::move(elems));
}

std::vector<Poly> random_monomial_ideal(std::mt19937_64& rng, int k, int max_gens, int max_deg) {
    auto ri = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
    int n = ri(1, max_gens);
    std::vector<Poly> out;
    for (int i = 0; i < n; ++i) {
        Monomial m = Monomial::one(k);
        int deg = ri(1, max_deg);
        for (int d = 0; d < deg; ++d) m.e[ri(0, k - 1)] += 1;
        out.push_back(Poly::monomial(m, 1));
    }
    return out;
}

}  // namespace lenhil
