#pragma once

#include "lenhil/arith.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace lenhil {

// Dense exponent vector; length is the ambient k.
struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}
    static Monomial one(int k) { return Monomial(std::vector<int>(k, 0)); }
    static Monomial var(int k, int i, int pow = 1);

    int k() const { return static_cast<int>(e.size()); }
    int degree() const;
    long weighted_degree(const std::vector<int>& weights) const;
    bool is_one() const { return degree() == 0; }

    bool divides(const Monomial& m) const;
    Monomial operator*(const Monomial& m) const;
    // quotient this / m; requires m | this
    Monomial operator/(const Monomial& m) const;
    Monomial lcm(const Monomial& m) const;

    bool operator==(const Monomial& m) const { return e == m.e; }
    bool operator!=(const Monomial& m) const { return e != m.e; }

    std::string str() const;
};

// Graded reverse-lexicographic order. Total, degree-compatible,
// multiplicative.
bool grevlex_less(const Monomial& a, const Monomial& b);

// (monomial, module position); position 0 is the first generator.
struct Term {
    Monomial mon;
    int pos = 0;

    bool operator==(const Term& t) const { return pos == t.pos && mon == t.mon; }
    bool operator!=(const Term& t) const { return !(*this == t); }
    // t divides u iff same position and mon | u.mon
    bool divides(const Term& t) const { return pos == t.pos && mon.divides(t.mon); }
};

// Term-over-position: grevlex on monomials, ties broken by position
// (earlier generators are larger).
bool term_less(const Term& a, const Term& b);

struct TermGreater {
    bool operator()(const Term& a, const Term& b) const { return term_less(b, a); }
};
struct MonGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_less(b, a); }
};

// Sparse polynomial over Q (storage type; engines reduce coefficients into
// their own domain).  Terms iterate in descending grevlex order.
class Poly {
public:
    using Map = std::map<Monomial, Rat, MonGreater>;

    Poly() = default;
    static Poly constant(int k, const Rat& c);
    static Poly monomial(Monomial m, const Rat& c);

    bool is_zero() const { return terms_.empty(); }
    const Map& terms() const { return terms_; }
    int k() const;

    void add_term(const Monomial& m, const Rat& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(const Rat& c) const;
    Poly shifted(const Monomial& m) const;  // multiply by a monomial

    // Sum of terms of total degree d.
    Poly homogeneous_component(int d) const;
    int degree() const;  // -1 for zero

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Text form "3*x1^2*x2 - x3 + 5"; round-trips through parse_poly.
    std::string str() const;

private:
    Map terms_;
};

// Parse the polynomial text syntax with variables x1..xk.  Throws
// PolyParseError with a position-annotated message on bad input.
Poly parse_poly(const std::string& text, int k);

struct PolyParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of a free module S^g: one Poly per generator.
struct FreeVec {
    std::vector<Poly> comps;

    FreeVec() = default;
    explicit FreeVec(int gens, int k) : comps(gens, Poly::constant(k, 0)) {}
    int gens() const { return static_cast<int>(comps.size()); }
    bool is_zero() const;

    FreeVec operator+(const FreeVec& o) const;
    FreeVec operator-(const FreeVec& o) const;
    FreeVec scaled(const Rat& c) const;
    FreeVec shifted(const Monomial& m) const;

    bool operator==(const FreeVec& o) const { return comps == o.comps; }

    std::string str() const;
};

// All monomials in k variables with weighted degree <= n, in ascending
// grevlex order (deterministic).  For unit weights the count is C(n+k, k).
std::vector<Monomial> monomials_up_to(int k, long n, const std::vector<int>& weights);

// Monomials of weighted degree exactly n.
std::vector<Monomial> monomials_exact(int k, long n, const std::vector<int>& weights);

// Monomials with per-block degree bounds: block[i] in [0, nblocks) for each
// variable; admits m iff for every block j, sum of exponents in block j is
// <= box[j].
std::vector<Monomial> monomials_boxed(int k, const std::vector<int>& block, const std::vector<long>& box);

long weighted_degree(const Monomial& m, const std::vector<int>& weights);

}  // namespace lenhil
