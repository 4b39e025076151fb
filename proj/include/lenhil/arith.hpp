#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lenhil {

using Int = mpz_class;
using Rat = mpq_class;

// Trial-division factorization, smallest prime first.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

Int binomial(long n, long k);
Int lcm_upto(long j);

enum class Cmp { Less, Equal, Greater, Incomparable };

// An element of R_{>=0} u {oo}, stored exactly as a nonnegative rational
// combination of {1} u {log p : p prime}, or infinity.  Canonical form: no
// zero coefficients, prime keys strictly increasing (std::map order).
class LengthValue {
public:
    LengthValue() = default;

    static LengthValue infinity();
    static LengthValue from_unit(const Rat& q);
    static LengthValue log_term(const Int& prime, const Rat& coeff);
    // log |Z^0 x Z/n| = sum e_p log p from the factorization of n >= 1.
    static LengthValue log_of_order(const Int& n);

    bool is_infinite() const { return infinite_; }
    bool is_zero() const { return !infinite_ && unit_ == 0 && logs_.empty(); }

    const Rat& unit() const { return unit_; }
    const std::map<Int, Rat>& logs() const { return logs_; }

    LengthValue operator+(const LengthValue& o) const;
    LengthValue& operator+=(const LengthValue& o);
    // Multiply by a nonnegative rational scale (0 * oo := 0).
    LengthValue scaled(const Rat& s) const;
    // Divide a pure log-p value by e (the log_n rescale for n = p^e).
    // Throws if the value is not supported on {1} u {log p}.
    LengthValue rescaled_log_base(const Int& p, unsigned e) const;

    bool operator==(const LengthValue& o) const;
    bool operator!=(const LengthValue& o) const { return !(*this == o); }

    // Exact where possible (identical values, componentwise dominance, or
    // pure-log comparison via integer powers); otherwise interval evaluation
    // of the logs, doubling precision up to max_bits.
    Cmp compare(const LengthValue& o, unsigned max_bits = 4096) const;

    std::string str() const;

private:
    bool infinite_ = false;
    Rat unit_ = 0;
    std::map<Int, Rat> logs_;

    void prune();
};

LengthValue lv_add(const LengthValue& a, const LengthValue& b);
LengthValue lv_of_group_order(const Int& n);
Cmp lv_compare(const LengthValue& a, const LengthValue& b, unsigned max_bits = 4096);
LengthValue lv_sup(const LengthValue& a, const LengthValue& b);

// A leading term r * t^d, r a LengthValue (possibly oo), or the zero monomial.
class MuMonomial {
public:
    MuMonomial() = default;  // zero
    MuMonomial(LengthValue coeff, int degree);

    static MuMonomial zero() { return {}; }

    bool is_zero() const { return !degree_.has_value(); }
    // Degree of a nonzero monomial; throws on zero.
    int degree() const;
    const LengthValue& coeff() const { return coeff_; }

    bool operator==(const MuMonomial& o) const;
    bool operator!=(const MuMonomial& o) const { return !(*this == o); }

    std::string str() const;

private:
    LengthValue coeff_;
    std::optional<int> degree_;
};

// Higher degree wins; equal degrees add coefficients; zero is neutral.
MuMonomial mu_oplus(const MuMonomial& a, const MuMonomial& b);
// Supremum in the sense of the general mu: higher degree wins, equal degrees
// take the larger coefficient.
MuMonomial mu_sup(const MuMonomial& a, const MuMonomial& b);

struct ArithError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lenhil
