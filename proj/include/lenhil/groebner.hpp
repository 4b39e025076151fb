#pragma once

#include "lenhil/modules.hpp"
#include "lenhil/poly.hpp"

#include <memory>

namespace lenhil {

struct GroebnerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Staircase: per (monomial, position) coefficient modulus c(beta); 0 means a
// free direction.
using Staircase = std::map<Term, Int, TermGreater>;

// Strong Groebner basis of the relation submodule of a presentation, with
// unique Euclidean-canonical normal forms.  Base must be Z or a field;
// Z/n presentations are lifted first (lift_to_integers).
class StrongGB {
public:
    // Deterministic Buchberger completion; over Z both S-pairs and gcd-pairs
    // are processed.  The step budget guards against runaway instances.
    static StrongGB compute(const Presentation& pres, long step_budget = 200000);

    const Presentation& presentation() const;
    std::vector<FreeVec> elements() const;

    FreeVec normal_form(const FreeVec& f) const;
    // c(beta) for a single term.
    Int staircase_modulus(const Term& beta) const;
    // Full table over the monomials-below-a-degree window.
    Staircase staircase(int max_degree) const;

    StrongGB(const StrongGB&) = default;
    StrongGB(StrongGB&&) = default;
    StrongGB& operator=(const StrongGB&) = default;
    StrongGB& operator=(StrongGB&&) = default;
    ~StrongGB() = default;

    struct Impl;

private:
    StrongGB() = default;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace lenhil
