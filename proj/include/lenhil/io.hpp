#pragma once

#include "lenhil/hilbert.hpp"
#include "lenhil/invariants.hpp"
#include "lenhil/slices.hpp"

#include <string>

namespace lenhil {

struct ProblemParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One problem file drives every command: ring + module + V0 + length kind.
struct Problem {
    Presentation module;
    SubmoduleGens v0 = SubmoduleGens::of({FreeVec(1, 1)});
    LengthSpec length;
};

Problem parse_problem(const std::string& json_text);
// Emit in canonical key order; parse(emit(p)) == emit-fixed-point.
std::string emit_problem(const Problem& p);

std::string length_value_json(const LengthValue& v);
LengthValue length_value_from_json(const std::string& text);

std::string series_to_json(const GrowthSeries& s);
std::string series_to_csv(const GrowthSeries& s);

std::string mu_monomial_json(const MuMonomial& m);

// Exponent tuple -> signed coefficient map, rationals as strings.
std::string eventual_polynomial_json(const EventualPolynomial& q);

// Full chain provenance: per-modulus links, running suprema, verdict.
std::string hat_estimate_json(const HatEstimate& est);

}  // namespace lenhil
