#pragma once

#include "lenhil/invariants.hpp"

#include <optional>
#include <random>

namespace lenhil {

struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Order of Z^g / row-span(rel) by coset enumeration (canonical residues from
// an independently coded textbook echelon), cross-checked against the pivot
// product; nullopt when a free direction exists.  Throws TooLarge past cap.
std::optional<Int> brute_force_group_order(const IntMatrix& rel, long cap = 10000);

// Coefficient of t^n in 1 / prod_i (1 - t_i)^{gamma_i} by direct convolution.
Int binom_series_coeff(const std::vector<int>& gamma, const std::vector<long>& n);

struct CheckReport {
    bool ok = true;
    std::string detail;
    MuMonomial mu_b, mu_a, mu_c;
};

// mu(B) = mu(A) (+) mu(C) for A = S*A0 <= B and C = B/A, plus the slice-level
// check lambda(A_n) + lambda(C_n) = lambda(B_n) for n <= slice_n_max, with
// A_n = A cap B_n computed through lattice (or field-span) intersections.
CheckReport additivity_check(const Presentation& b, const SubmoduleGens& a0, LengthSpec spec,
                             long slice_n_max = 8, long max_samples = 64);

// h^(d)(B) = h^(d)(A) + h^(d)(C) for every d <= k.
CheckReport entropy_additivity_check(const Presentation& b, const SubmoduleGens& a0, LengthSpec spec,
                                     long max_samples = 64);

// Fixed-seed random instances: g <= 3 generators, <= 4 relations,
// coefficients in [-5, 5], monomial degrees <= 3.
Presentation random_presentation(std::mt19937_64& rng, const RingSpec& ring);
SubmoduleGens random_submodule_gens(std::mt19937_64& rng, const Presentation& p);
std::vector<Poly> random_monomial_ideal(std::mt19937_64& rng, int k, int max_gens = 4, int max_deg = 4);

}  // namespace lenhil
