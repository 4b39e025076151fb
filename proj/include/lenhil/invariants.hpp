#pragma once

#include "lenhil/hilbert.hpp"

#include <optional>

namespace lenhil {

// Leading term of the fitted Hilbert-Samuel polynomial c_n = lambda(M/I^{n+1}M).
MuResult samuel_mu_bar(const Presentation& m, LengthSpec spec, long max_samples = 64, int threads = 1);

enum class ChainVerdict { Stabilized, UnboundedEvidence, Inconclusive };
std::string verdict_name(ChainVerdict v);

// One evaluated link of a lambda-cofinite-ideal chain over Z.
struct HatStep {
    Int modulus;
    MuMonomial mu;
};

// Certified lower bound for mu-hat: mu(M/mM) along the distinct moduli
// m = lcm(1..j), j = 2..J, folded with the monomial supremum.  Exactness is
// claimed only when Stabilized.
struct HatEstimate {
    std::vector<HatStep> chain;
    std::vector<MuMonomial> running_sup;  // after each step
    MuMonomial sup;
    ChainVerdict verdict = ChainVerdict::Inconclusive;
};
HatEstimate hat_mu_chain(const Presentation& m, int chain_length, long max_samples = 64,
                         int threads = 1);

// Same chain at the level of d-dimensional entropies.
struct HatValueEstimate {
    std::vector<std::pair<Int, LengthValue>> chain;
    LengthValue sup;
    ChainVerdict verdict = ChainVerdict::Inconclusive;
};
HatValueEstimate hat_entropy_d(const Presentation& m, int d, int chain_length, long max_samples = 64,
                               int threads = 1);

// Leading term of the intrinsic polynomial lambda(S_{n+1}V0 / S_n V0);
// requires V0 lambda-inert (lambda((S_1 V0)/V0) < oo), degree at most k-1.
MuResult intrinsic_mu(const Presentation& m, const SubmoduleGens& v0, LengthSpec spec,
                      long max_samples = 64, int threads = 1);

// d+1 when mu-tilde != 0; 0 when lambda(A) > 0 and mu-tilde = 0; nullopt
// encodes -oo (the zero module).
std::optional<int> intrinsic_dimension(const MuMonomial& mu_tilde, const LengthValue& lambda_a);

// Intrinsic i-dimensional entropy, (d+1)! * s at i = d+1.
LengthValue intrinsic_entropy_i(const MuMonomial& mu_tilde, int i, const LengthValue& lambda_a);

// Supremum of mu over the supplied generating families with finite lambda
// (families of infinite length are skipped); a lower bound for the general mu.
MuMonomial mu_general_lower_bound(const Presentation& m, const std::vector<SubmoduleGens>& families,
                                  LengthSpec spec, long max_samples = 64, int threads = 1);

}  // namespace lenhil
