#pragma once

#include "lenhil/slices.hpp"

namespace lenhil {

// Signed rational combination over the {1} u {log p} basis; key 0 holds the
// unit coefficient, key p the coefficient of log p.  No zero entries.
using LogLin = std::map<Int, Rat>;

LogLin loglin_of(const LengthValue& v);  // v must be finite
LengthValue loglin_to_length(const LogLin& l);  // throws on a negative entry
LogLin loglin_add(const LogLin& a, const LogLin& b);
LogLin loglin_sub(const LogLin& a, const LogLin& b);
LogLin loglin_scale(const LogLin& a, const Rat& c);
std::string loglin_str(const LogLin& l);

struct NotStabilized : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotRational : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotLambdaFinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotInert : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroMu : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Eventual (multi)polynomial: exact LogLin coefficients per monomial in the
// sample variables, the stabilization corner, and the bounds used.
struct EventualPolynomial {
    int nvars = 1;
    std::map<std::vector<int>, LogLin> coeffs;  // exponent tuple -> coefficient
    std::vector<long> stable_from;              // n0, or the box corner
    std::vector<int> per_var_bounds;            // degree bound per variable

    LogLin evaluate(const std::vector<long>& n) const;
    LengthValue evaluate_length(const std::vector<long>& n) const;
    int total_degree() const;  // -1 for the zero polynomial
    // top-degree homogeneous part
    std::map<std::vector<int>, LogLin> leading_homogeneous_component() const;
    // leading monomial of a univariate polynomial
    MuMonomial leading_mu() const;
    bool operator==(const EventualPolynomial& o) const {
        return nvars == o.nvars && coeffs == o.coeffs;
    }
    std::string str(const std::string& var = "n") const;
};

// Numerator p(t) with F(t) = p(t) / ((1-t) * prod_i (1 - t^{gamma_i})).
struct NumeratorPoly {
    std::vector<LogLin> coeffs;          // p_0, p_1, ...
    std::vector<int> denominator_weights;  // the gamma_i (the extra (1-t) is implied)
    std::string str() const;
};

// Convolve the series against the expanded denominator; the trailing
// max(k+2, 6) coefficients must vanish or NotRational is thrown.
NumeratorPoly generating_numerator(const GrowthSeries& series, const std::vector<int>& weights);

// Smallest n0 such that a degree <= max_deg polynomial interpolated on
// [n0, n0+max_deg] reproduces every sample n >= n0, keeping at least `guard`
// verification samples past the interpolation window.
EventualPolynomial fit_eventual_polynomial(const GrowthSeries& series, int max_deg, int guard);

// Multivariate version over a MultiBox series with per-variable bounds.
EventualPolynomial fit_multivariate(const GrowthSeries& series, const std::vector<int>& per_var_bounds,
                                    int guard);

struct MuResult {
    MuMonomial mu;
    EventualPolynomial poly;
    long samples_used = 0;
    int guard = 0;
};

// Leading term of the Hilbert polynomial of lambda(S_n V0); requires
// lambda(V0) < oo.  Doubles the sample count from 2k+8 up to max_samples.
MuResult mu(const Presentation& m, const SubmoduleGens& v0, LengthSpec spec, long max_samples = 64,
            int threads = 1);

// Degree of a nonzero mu (throws ZeroMu) and the lambda-degree d! * m
// (0 for the zero monomial).
int lambda_dimension(const MuMonomial& mu);
LengthValue lambda_degree(const MuMonomial& mu);

// d-dimensional entropy: oo if deg mu > d, 0 if deg mu < d, d! * m at
// deg mu == d.  (Normalization note: d! times the leading coefficient, the
// convention consistent with the lambda-degree.)
LengthValue entropy_d(const MuMonomial& mu, int d);

}  // namespace lenhil
