#pragma once

#include "lenhil/linalg.hpp"
#include "lenhil/poly.hpp"

#include <optional>

namespace lenhil {

struct ModuleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Base ring R plus the polynomial ring data: S = R[x1..xk] with positive
// weights on the variables (default all 1).
struct RingSpec {
    BaseKind base = BaseKind::Integers;
    Int n = 0;  // modulus for IntegersModN, characteristic for PrimeField
    int k = 1;
    std::vector<int> weights;  // size k, entries >= 1

    static RingSpec integers(int k);
    static RingSpec rationals(int k);
    static RingSpec prime_field(const Int& p, int k);
    static RingSpec integers_mod(const Int& n, int k);

    RingSpec with_weights(std::vector<int> w) const;
    bool is_field() const { return base == BaseKind::Rationals || base == BaseKind::PrimeField; }
    void validate() const;
    bool operator==(const RingSpec& o) const {
        return base == o.base && n == o.n && k == o.k && weights == o.weights;
    }
};

struct LengthSpec {
    LengthKind kind = LengthKind::LogCard;
    // Throws UnsupportedCombination when the kind is undefined for the base.
    void validate(const RingSpec& ring) const;
};

// A finitely presented S-module: g generators, optional generator degrees
// (graded case), relation vectors.
struct Presentation {
    RingSpec ring;
    int gens = 1;
    std::optional<std::vector<int>> gen_degrees;
    std::vector<FreeVec> relations;

    void validate() const;  // shapes, coefficient domains, homogeneity if graded
    bool relations_homogeneous() const;  // w.r.t. weights and gen_degrees (0 if absent)
    bool relations_monomial() const;     // every relation is c * x^a * e_i
    int gen_degree(int i) const { return gen_degrees ? (*gen_degrees)[i] : 0; }
};

// R-submodule generators: either explicit elements or the built-in family
// Z + c*S (all of c*S plus the unit generator), expanded per degree bound.
struct SubmoduleGens {
    std::vector<FreeVec> elements;
    std::optional<Int> z_plus_cS;  // builtin Z + cS; requires gens == 1

    static SubmoduleGens of(std::vector<FreeVec> elems);
    static SubmoduleGens unit_generators(const Presentation& p);
    static SubmoduleGens z_plus(const Int& c, int k);

    bool is_builtin() const { return z_plus_cS.has_value(); }
    // Explicit generator list, truncating the builtin tail at total degree
    // <= bound (the tail beyond the working window cannot affect a slice).
    std::vector<FreeVec> expand(const Presentation& p, int bound) const;
    // Max total degree over the explicit elements (0 for the builtin).
    int max_degree() const;
};

// ---- builders for the worked examples ----

// S/I as a one-generator presentation.
Presentation from_ideal_quotient(const RingSpec& ring, const std::vector<Poly>& ideal_gens);

// R[z, z^-1] as an R[x1,x2]-module, x1 -> z^a, x2 -> z^b, for a = 1, b <= 0.
// b = 0 degenerates to plain R[z] (free, one generator, k = 1).
Presentation laurent_presentation(const RingSpec& base1var, int a, int b);

// M/mM: adds relations m*e_i; base must be Integers.
Presentation quotient_mod_integer(const Presentation& m, const Int& mod);

// R[z] as an R[x1,x2]-module with x1 -> z^2, x2 -> z^3:
// gens {1, z}, relations {x2 e1 - x1 e2, x2 e2 - x1^2 e1}.
Presentation two_generator_algebra_example(const RingSpec& base2var);

// Lift a Z/n presentation to Z by adjoining n*e_i relations.  Identity on
// other bases.
Presentation lift_to_integers(const Presentation& p);

// Canonicalize relation coefficients: residues in [0, p) over F_p (rational
// coefficients cleared through the inverse of the denominator), in [0, n)
// over Z/n; zero terms dropped.  Identity over Z and Q.
Presentation reduce_coefficients(Presentation p);

}  // namespace lenhil
