#include "lenhil/modules.hpp"

namespace lenhil {

RingSpec RingSpec::integers(int k) {
    RingSpec r;
    r.base = BaseKind::Integers;
    r.k = k;
    r.weights.assign(k, 1);
    return r;
}

RingSpec RingSpec::rationals(int k) {
    RingSpec r = integers(k);
    r.base = BaseKind::Rationals;
    return r;
}

RingSpec RingSpec::prime_field(const Int& p, int k) {
    RingSpec r = integers(k);
    r.base = BaseKind::PrimeField;
    r.n = p;
    return r;
}

RingSpec RingSpec::integers_mod(const Int& n, int k) {
    RingSpec r = integers(k);
    r.base = BaseKind::IntegersModN;
    r.n = n;
    return r;
}

RingSpec RingSpec::with_weights(std::vector<int> w) const {
    RingSpec r = *this;
    r.weights = std::move(w);
    r.validate();
    return r;
}

void RingSpec::validate() const {
    if (k < 0 || k > 8) throw ModuleError("RingSpec: k must be in 0..8");
    if (static_cast<int>(weights.size()) != k) throw ModuleError("RingSpec: weights size != k");
    for (int w : weights)
        if (w < 1) throw ModuleError("RingSpec: weights must be >= 1");
    if (base == BaseKind::IntegersModN && n < 2) throw ModuleError("RingSpec: modulus must be >= 2");
    if (base == BaseKind::PrimeField) {
        if (n < 2 || mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
            throw ModuleError("RingSpec: characteristic must be prime");
    }
}

void LengthSpec::validate(const RingSpec& ring) const {
    switch (kind) {
        case LengthKind::Dimension:
            if (!ring.is_field()) throw UnsupportedCombination("Dimension requires a field base");
            break;
        case LengthKind::Rank:
            if (ring.base != BaseKind::Integers && ring.base != BaseKind::Rationals)
                throw UnsupportedCombination("Rank requires Integers or Rationals");
            break;
        case LengthKind::LogCard:
            if (ring.base != BaseKind::Integers && ring.base != BaseKind::IntegersModN)
                throw UnsupportedCombination("LogCard requires Integers or Z/n");
            break;
    }
}

void Presentation::validate() const {
    ring.validate();
    if (gens < 0) throw ModuleError("Presentation: negative generator count");
    if (gen_degrees && static_cast<int>(gen_degrees->size()) != gens)
        throw ModuleError("Presentation: gen_degrees size != gens");
    for (const auto& r : relations) {
        if (r.gens() != gens) throw ModuleError("Presentation: relation component count != gens");
        for (const auto& p : r.comps)
            for (const auto& [m, c] : p.terms()) {
                if (m.k() != ring.k) throw ModuleError("Presentation: monomial arity != k");
                if (ring.base != BaseKind::Rationals && c.get_den() != 1)
                    throw ModuleError("Presentation: non-integer coefficient over this base");
            }
    }
    if (gen_degrees && !relations_homogeneous())
        throw ModuleError("Presentation: graded presentation has an inhomogeneous relation");
}

bool Presentation::relations_homogeneous() const {
    for (const auto& r : relations) {
        long deg = -1;
        for (int i = 0; i < r.gens(); ++i)
            for (const auto& [m, c] : r.comps[i].terms()) {
                long d = m.weighted_degree(ring.weights) + gen_degree(i);
                if (deg < 0) deg = d;
                if (d != deg) return false;
            }
    }
    return true;
}

bool Presentation::relations_monomial() const {
    for (const auto& r : relations) {
        int terms = 0;
        for (const auto& p : r.comps) terms += static_cast<int>(p.terms().size());
        if (terms != 1) return false;
    }
    return true;
}

SubmoduleGens SubmoduleGens::of(std::vector<FreeVec> elems) {
    if (elems.empty()) throw ModuleError("SubmoduleGens: empty generator list");
    SubmoduleGens v;
    v.elements = std::move(elems);
    return v;
}

SubmoduleGens SubmoduleGens::unit_generators(const Presentation& p) {
    std::vector<FreeVec> elems;
    for (int i = 0; i < p.gens; ++i) {
        FreeVec v(p.gens, p.ring.k);
        v.comps[i] = Poly::constant(p.ring.k, 1);
        elems.push_back(std::move(v));
    }
    return of(std::move(elems));
}

SubmoduleGens SubmoduleGens::z_plus(const Int& c, int) {
    if (c < 2) throw ModuleError("SubmoduleGens: Z + cS needs c >= 2");
    SubmoduleGens v;
    v.z_plus_cS = c;
    return v;
}

std::vector<FreeVec> SubmoduleGens::expand(const Presentation& p, int bound) const {
    if (!is_builtin()) {
        for (const auto& e : elements)
            if (e.gens() != p.gens) throw ModuleError("SubmoduleGens: component count mismatch");
        return elements;
    }
    if (p.gens != 1) throw ModuleError("SubmoduleGens: Z + cS requires a cyclic presentation");
    std::vector<FreeVec> out;
    FreeVec unit(1, p.ring.k);
    unit.comps[0] = Poly::constant(p.ring.k, 1);
    out.push_back(unit);
    std::vector<int> unit_w(p.ring.k, 1);
    for (const auto& m : monomials_up_to(p.ring.k, bound, unit_w)) {
        FreeVec v(1, p.ring.k);
        v.comps[0] = Poly::monomial(m, Rat(*z_plus_cS));
        out.push_back(std::move(v));
    }
    return out;
}

int SubmoduleGens::max_degree() const {
    if (is_builtin()) return 0;
    int d = 0;
    for (const auto& e : elements)
        for (const auto& p : e.comps) d = std::max(d, p.degree());
    return d;
}

Presentation from_ideal_quotient(const RingSpec& ring, const std::vector<Poly>& ideal_gens) {
    Presentation p;
    p.ring = ring;
    p.gens = 1;
    for (const auto& f : ideal_gens) {
        FreeVec v(1, ring.k);
        v.comps[0] = f;
        p.relations.push_back(std::move(v));
    }
    p.validate();
    return p;
}

Presentation laurent_presentation(const RingSpec& base1var, int a, int b) {
    if (a != 1 || b > 0) throw ModuleError("laurent_presentation: supported pairs are (1, b) with b <= 0");
    if (b == 0) {
        // plain R[z]: free on one generator over R[x1]
        Presentation p;
        p.ring = base1var;
        p.ring.k = 1;
        p.ring.weights.assign(1, 1);
        p.gens = 1;
        p.validate();
        return p;
    }
    int m = -b;
    RingSpec ring = base1var;
    ring.k = 2;
    ring.weights.assign(2, 1);
    Presentation p;
    p.ring = ring;
    p.gens = m;  // g_i represents z^{-i}, i = 0..m-1
    auto x1 = [&](int pow) { return Monomial::var(2, 0, pow); };
    Monomial x2 = Monomial::var(2, 1);
    // winding relation (x1^m x2 - 1) g0
    {
        FreeVec v(m, 2);
        v.comps[0] = Poly::monomial(x1(m) * x2, 1) - Poly::constant(2, 1);
        p.relations.push_back(std::move(v));
    }
    // defining relations g_i = x1^{m-i} x2 g0 for the added generators
    for (int i = 1; i < m; ++i) {
        FreeVec v(m, 2);
        v.comps[i] = Poly::constant(2, 1);
        v.comps[0] = -Poly::monomial(x1(m - i) * x2, 1);
        p.relations.push_back(std::move(v));
    }
    // chain relations x1 g_i = g_{i-1} (implied; kept for readability of the
    // emitted presentation)
    for (int i = 1; i < m; ++i) {
        FreeVec v(m, 2);
        v.comps[i] = Poly::monomial(x1(1), 1);
        v.comps[i - 1] = -Poly::constant(2, 1);
        p.relations.push_back(std::move(v));
    }
    p.validate();
    return p;
}

Presentation quotient_mod_integer(const Presentation& m, const Int& mod) {
    if (m.ring.base != BaseKind::Integers) throw ModuleError("WrongBase: quotient_mod_integer needs Z");
    if (mod < 1) throw ModuleError("quotient_mod_integer: modulus must be >= 1");
    Presentation p = m;
    for (int i = 0; i < p.gens; ++i) {
        FreeVec v(p.gens, p.ring.k);
        v.comps[i] = Poly::constant(p.ring.k, Rat(mod));
        p.relations.push_back(std::move(v));
    }
    p.validate();
    return p;
}

Presentation two_generator_algebra_example(const RingSpec& base2var) {
    RingSpec ring = base2var;
    ring.k = 2;
    ring.weights.assign(2, 1);
    Presentation p;
    p.ring = ring;
    p.gens = 2;
    Monomial x1 = Monomial::var(2, 0), x2 = Monomial::var(2, 1);
    {
        FreeVec v(2, 2);  // x2 e1 - x1 e2
        v.comps[0] = Poly::monomial(x2, 1);
        v.comps[1] = -Poly::monomial(x1, 1);
        p.relations.push_back(std::move(v));
    }
    {
        FreeVec v(2, 2);  // x2 e2 - x1^2 e1
        v.comps[1] = Poly::monomial(x2, 1);
        v.comps[0] = -Poly::monomial(Monomial::var(2, 0, 2), 1);
        p.relations.push_back(std::move(v));
    }
    p.validate();
    return p;
}

Presentation reduce_coefficients(Presentation p) {
    if (p.ring.base != BaseKind::PrimeField && p.ring.base != BaseKind::IntegersModN) return p;
    const Int& n = p.ring.n;
    for (auto& r : p.relations)
        for (auto& poly : r.comps) {
            Poly out;
            for (const auto& [m, c] : poly.terms()) {
                Int num = c.get_num() % n;
                if (num < 0) num += n;
                if (p.ring.base == BaseKind::PrimeField && c.get_den() != 1) {
                    Int inv;
                    if (mpz_invert(inv.get_mpz_t(), Int(c.get_den() % n).get_mpz_t(), n.get_mpz_t()) == 0)
                        throw ModuleError("coefficient denominator not invertible mod p");
                    num = (num * inv) % n;
                }
                if (num != 0) out.add_term(m, Rat(num));
            }
            poly = out;
        }
    return p;
}

Presentation lift_to_integers(const Presentation& p) {
    if (p.ring.base != BaseKind::IntegersModN) return p;
    Presentation q = p;
    q.ring.base = BaseKind::Integers;
    Int n = p.ring.n;
    q.ring.n = 0;
    for (int i = 0; i < q.gens; ++i) {
        FreeVec v(q.gens, q.ring.k);
        v.comps[i] = Poly::constant(q.ring.k, Rat(n));
        q.relations.push_back(std::move(v));
    }
    q.validate();
    return q;
}

}  // namespace lenhil
