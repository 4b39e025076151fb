#include "lenhil/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lenhil {

Monomial Monomial::var(int k, int i, int pow) {
    Monomial m = one(k);
    m.e.at(i) = pow;
    return m;
}

int Monomial::degree() const {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

long Monomial::weighted_degree(const std::vector<int>& weights) const {
    long d = 0;
    for (size_t i = 0; i < e.size(); ++i) d += static_cast<long>(e[i]) * weights.at(i);
    return d;
}

bool Monomial::divides(const Monomial& m) const {
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > m.e[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
    Monomial r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] += m.e[i];
    return r;
}

Monomial Monomial::operator/(const Monomial& m) const {
    Monomial r = *this;
    for (size_t i = 0; i < e.size(); ++i) {
        r.e[i] -= m.e[i];
        if (r.e[i] < 0) throw PolyParseError("Monomial division not exact");
    }
    return r;
}

Monomial Monomial::lcm(const Monomial& m) const {
    Monomial r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] = std::max(r.e[i], m.e[i]);
    return r;
}

std::string Monomial::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << "x" << (i + 1);
        if (e[i] != 1) os << "^" << e[i];
    }
    if (first) return "1";
    return os.str();
}

bool grevlex_less(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    // reverse lexicographic: larger exponent on the LAST differing variable
    // makes the monomial smaller
    for (int i = a.k() - 1; i >= 0; --i) {
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
    }
    return false;
}

bool term_less(const Term& a, const Term& b) {
    if (a.mon != b.mon) return grevlex_less(a.mon, b.mon);
    return a.pos > b.pos;  // earlier generator position is larger
}

Poly Poly::constant(int k, const Rat& c) {
    Poly p;
    if (c != 0) p.terms_[Monomial::one(k)] = c;
    return p;
}

Poly Poly::monomial(Monomial m, const Rat& c) {
    Poly p;
    if (c != 0) p.terms_[std::move(m)] = c;
    return p;
}

int Poly::k() const { return terms_.empty() ? -1 : terms_.begin()->first.k(); }

void Poly::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
    return r;
}

Poly Poly::scaled(const Rat& c) const {
    Poly r;
    if (c == 0) return r;
    for (const auto& [m, cc] : terms_) r.terms_[m] = cc * c;
    return r;
}

Poly Poly::shifted(const Monomial& m) const {
    Poly r;
    for (const auto& [mm, c] : terms_) r.terms_[mm * m] = c;
    return r;
}

Poly Poly::homogeneous_component(int d) const {
    Poly r;
    for (const auto& [m, c] : terms_)
        if (m.degree() == d) r.terms_[m] = c;
    return r;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (m.is_one()) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << m.str();
        }
    }
    return os.str();
}

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;
    int k;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw PolyParseError(msg + " at position " + std::to_string(i) + " in \"" + s + "\"");
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }

    Int parse_uint() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected a number");
        return Int(s.substr(start, i - start));
    }

    Rat parse_coeff() {
        Int num = parse_uint();
        skip_ws();
        if (i < s.size() && s[i] == '/') {
            ++i;
            Int den = parse_uint();
            if (den == 0) fail("zero denominator");
            Rat r(num, den);
            r.canonicalize();
            return r;
        }
        return Rat(num);
    }

    // var ::= x<digits> [^ <digits>]
    std::pair<int, int> parse_var_power() {
        skip_ws();
        if (i >= s.size() || s[i] != 'x') fail("expected a variable");
        ++i;
        Int idx = parse_uint();
        if (idx < 1 || idx > k) fail("variable index out of range 1.." + std::to_string(k));
        int pow = 1;
        skip_ws();
        if (i < s.size() && s[i] == '^') {
            ++i;
            Int p = parse_uint();
            if (!p.fits_sint_p()) fail("exponent too large");
            pow = static_cast<int>(p.get_si());
        }
        return {static_cast<int>(idx.get_si()) - 1, pow};
    }

    // term ::= factor ('*' factor)*;  factor ::= coeff | var_power
    void parse_term(Poly& out, bool negative) {
        Rat coeff = 1;
        Monomial mon = Monomial::one(k);
        auto parse_factor = [&] {
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= parse_coeff();
            } else if (c == 'x') {
                auto [vi, pw] = parse_var_power();
                mon.e[vi] += pw;
            } else {
                fail("expected a coefficient or variable");
            }
        };
        parse_factor();
        while (peek() == '*') {
            ++i;
            parse_factor();
        }
        if (negative) coeff = -coeff;
        out.add_term(mon, coeff);
    }

    Poly parse() {
        Poly out;
        bool negative = false;
        skip_ws();
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            negative = s[i] == '-';
            ++i;
        }
        parse_term(out, negative);
        while (!eof()) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++i;
                parse_term(out, c == '-');
            } else {
                fail("expected '+' or '-'");
            }
        }
        return out;
    }
};

}  // namespace

Poly parse_poly(const std::string& text, int k) {
    Parser p{text, 0, k};
    return p.parse();
}

bool FreeVec::is_zero() const {
    for (const auto& p : comps)
        if (!p.is_zero()) return false;
    return true;
}

FreeVec FreeVec::operator+(const FreeVec& o) const {
    FreeVec r = *this;
    for (size_t i = 0; i < comps.size(); ++i) r.comps[i] = r.comps[i] + o.comps[i];
    return r;
}

FreeVec FreeVec::operator-(const FreeVec& o) const {
    FreeVec r = *this;
    for (size_t i = 0; i < comps.size(); ++i) r.comps[i] = r.comps[i] - o.comps[i];
    return r;
}

FreeVec FreeVec::scaled(const Rat& c) const {
    FreeVec r = *this;
    for (auto& p : r.comps) p = p.scaled(c);
    return r;
}

FreeVec FreeVec::shifted(const Monomial& m) const {
    FreeVec r = *this;
    for (auto& p : r.comps) p = p.shifted(m);
    return r;
}

std::string FreeVec::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < comps.size(); ++i) {
        if (i) os << ", ";
        os << comps[i].str();
    }
    os << ")";
    return os.str();
}

namespace {

void enumerate_rec(int k, int var, long budget, const std::vector<int>& weights, Monomial& cur,
                   std::vector<Monomial>& out) {
    if (var == k) {
        out.push_back(cur);
        return;
    }
    for (int e = 0;; ++e) {
        long used = static_cast<long>(e) * weights[var];
        if (used > budget) break;
        cur.e[var] = e;
        enumerate_rec(k, var + 1, budget - used, weights, cur, out);
    }
    cur.e[var] = 0;
}

}  // namespace

long weighted_degree(const Monomial& m, const std::vector<int>& weights) {
    return m.weighted_degree(weights);
}

std::vector<Monomial> monomials_up_to(int k, long n, const std::vector<int>& weights) {
    for (int w : weights)
        if (w < 1) throw PolyParseError("monomials_up_to: weights must be >= 1");
    std::vector<Monomial> out;
    Monomial cur = Monomial::one(k);
    if (n >= 0) enumerate_rec(k, 0, n, weights, cur, out);
    std::sort(out.begin(), out.end(), grevlex_less);
    return out;
}

std::vector<Monomial> monomials_exact(int k, long n, const std::vector<int>& weights) {
    auto all = monomials_up_to(k, n, weights);
    std::vector<Monomial> out;
    for (auto& m : all)
        if (m.weighted_degree(weights) == n) out.push_back(std::move(m));
    return out;
}

std::vector<Monomial> monomials_boxed(int k, const std::vector<int>& block, const std::vector<long>& box) {
    long total = 0;
    for (long b : box) total += b;
    std::vector<int> unit(k, 1);
    auto all = monomials_up_to(k, total, unit);
    std::vector<Monomial> out;
    for (auto& m : all) {
        std::vector<long> used(box.size(), 0);
        for (int i = 0; i < k; ++i) used.at(block[i]) += m.e[i];
        bool ok = true;
        for (size_t j = 0; j < box.size(); ++j)
            if (used[j] > box[j]) ok = false;
        if (ok) out.push_back(std::move(m));
    }
    return out;
}

}  // namespace lenhil
