#include "lenhil/arith.hpp"

#include <sstream>

namespace lenhil {

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
    if (n < 1) throw ArithError("factorize: argument must be >= 1");
    std::vector<std::pair<Int, unsigned>> out;
    Int m = n;
    Int p = 2;
    while (p * p <= m) {
        if (m % p == 0) {
            unsigned e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        p += (p == 2) ? 1 : 2;
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Int lcm_upto(long j) {
    Int r = 1;
    for (long i = 2; i <= j; ++i) {
        Int g;
        mpz_lcm_ui(g.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(i));
        r = g;
    }
    return r;
}

LengthValue LengthValue::infinity() {
    LengthValue v;
    v.infinite_ = true;
    return v;
}

LengthValue LengthValue::from_unit(const Rat& q) {
    if (q < 0) throw ArithError("LengthValue: negative unit coefficient");
    LengthValue v;
    v.unit_ = q;
    v.unit_.canonicalize();
    return v;
}

LengthValue LengthValue::log_term(const Int& prime, const Rat& coeff) {
    if (coeff < 0) throw ArithError("LengthValue: negative log coefficient");
    LengthValue v;
    if (coeff != 0) {
        Rat c = coeff;
        c.canonicalize();
        v.logs_[prime] = c;
    }
    return v;
}

LengthValue LengthValue::log_of_order(const Int& n) {
    LengthValue v;
    for (const auto& [p, e] : factorize(n)) v.logs_[p] = Rat(e);
    return v;
}

void LengthValue::prune() {
    for (auto it = logs_.begin(); it != logs_.end();) {
        if (it->second == 0)
            it = logs_.erase(it);
        else
            ++it;
    }
}

LengthValue LengthValue::operator+(const LengthValue& o) const {
    LengthValue r = *this;
    r += o;
    return r;
}

LengthValue& LengthValue::operator+=(const LengthValue& o) {
    if (o.infinite_) infinite_ = true;
    if (infinite_) {
        unit_ = 0;
        logs_.clear();
        return *this;
    }
    unit_ += o.unit_;
    for (const auto& [p, c] : o.logs_) logs_[p] += c;
    prune();
    return *this;
}

LengthValue LengthValue::scaled(const Rat& s) const {
    if (s < 0) throw ArithError("LengthValue::scaled: negative scale");
    if (s == 0) return LengthValue();
    if (infinite_) return infinity();
    LengthValue r;
    r.unit_ = unit_ * s;
    for (const auto& [p, c] : logs_) r.logs_[p] = c * s;
    r.prune();
    return r;
}

LengthValue LengthValue::rescaled_log_base(const Int& p, unsigned e) const {
    if (infinite_) return infinity();
    if (unit_ != 0) throw ArithError("rescaled_log_base: value has a unit part");
    for (const auto& [q, c] : logs_)
        if (q != p) throw ArithError("rescaled_log_base: value not supported on log " + p.get_str());
    LengthValue r;
    auto it = logs_.find(p);
    if (it != logs_.end()) r.unit_ = it->second / Rat(e);
    return r;
}

bool LengthValue::operator==(const LengthValue& o) const {
    return infinite_ == o.infinite_ && unit_ == o.unit_ && logs_ == o.logs_;
}

namespace {

// Fixed-point lower/upper bounds for ln(p), p >= 2, at the given precision:
// returns (lo, hi) with lo <= ln(p)*2^bits <= hi.
// ln p = s*ln2 + 2*atanh(x) with x = (m - 2^s_den)/(m + 2^s_den) ... we use
// p = 2^s * q, q in [1,2), ln q = 2*atanh((q-1)/(q+1)) with argument <= 1/3.
struct FixedInterval {
    Int lo, hi;  // value in [lo/2^bits, hi/2^bits]
};

FixedInterval fp_add(const FixedInterval& a, const FixedInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

FixedInterval fp_scale_int(const FixedInterval& a, long m) {
    if (m >= 0) return {a.lo * m, a.hi * m};
    return {a.hi * m, a.lo * m};
}

// 2*atanh(num/den) in fixed point; requires 0 <= num*3 <= den.
FixedInterval fp_atanh2(const Int& num, const Int& den, unsigned bits) {
    Int one = Int(1) << bits;
    // term_k = x^(2k+1)/(2k+1); x <= 1/3 so terms shrink by >= 1/9.
    Int xf_lo, xf_hi;  // x in fixed point, floor/ceil
    mpz_fdiv_q(xf_lo.get_mpz_t(), Int(num << bits).get_mpz_t(), den.get_mpz_t());
    xf_hi = xf_lo + 1;
    Int x2_num = num * num, x2_den = den * den;
    Int pw_lo = xf_lo, pw_hi = xf_hi;  // x^(2k+1) fixed point bounds
    Int sum_lo = 0, sum_hi = 0;
    for (unsigned k = 0;; ++k) {
        Int t_lo, t_hi;
        mpz_fdiv_q(t_lo.get_mpz_t(), pw_lo.get_mpz_t(), Int(2 * k + 1).get_mpz_t());
        mpz_cdiv_q(t_hi.get_mpz_t(), pw_hi.get_mpz_t(), Int(2 * k + 1).get_mpz_t());
        sum_lo += t_lo;
        sum_hi += t_hi;
        if (t_hi <= 1) {
            // geometric tail bound: remaining < t_hi * (1/9)/(1-1/9) = t_hi/8
            sum_hi += 1;
            break;
        }
        Int nl = pw_lo * x2_num, nh = pw_hi * x2_num;
        mpz_fdiv_q(pw_lo.get_mpz_t(), nl.get_mpz_t(), x2_den.get_mpz_t());
        mpz_cdiv_q(pw_hi.get_mpz_t(), nh.get_mpz_t(), x2_den.get_mpz_t());
        pw_hi += 1;
    }
    return {2 * sum_lo, 2 * sum_hi};
}

FixedInterval fp_ln(const Int& p, unsigned bits) {
    // p = 2^s * q with q = p/2^s in [1,2)
    size_t s = mpz_sizeinbase(p.get_mpz_t(), 2) - 1;
    Int den = Int(1) << s;
    // ln q = 2*atanh((p-den)/(p+den)), argument in [0,1/3)
    FixedInterval lq = fp_atanh2(p - den, p + den, bits);
    if (s == 0) return lq;
    FixedInterval l2 = fp_atanh2(1, 3, bits);  // ln 2 = 2*atanh(1/3)
    return fp_add(lq, fp_scale_int(l2, static_cast<long>(s)));
}

// Sign of unit + sum coeff_p * ln p, with rational unit/coeffs, via fixed
// point intervals; returns 0 when undecided at this precision.
int interval_sign(const Rat& unit, const std::map<Int, Rat>& logs, unsigned bits) {
    Int den = unit.get_den();
    for (const auto& [p, c] : logs) {
        Int l;
        mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        den = l;
    }
    // value * den = unit*den + sum (c*den) ln p, all integer multipliers
    Int lo = (unit.get_num() * den) / unit.get_den() << bits;
    Int hi = lo;
    for (const auto& [p, c] : logs) {
        Int m = c.get_num() * (den / c.get_den());
        FixedInterval lp = fp_ln(p, bits);
        if (m >= 0) {
            lo += m * lp.lo;
            hi += m * lp.hi;
        } else {
            lo += m * lp.hi;
            hi += m * lp.lo;
        }
    }
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    return 0;
}

}  // namespace

Cmp LengthValue::compare(const LengthValue& o, unsigned max_bits) const {
    if (infinite_ && o.infinite_) return Cmp::Equal;
    if (infinite_) return Cmp::Greater;
    if (o.infinite_) return Cmp::Less;
    if (*this == o) return Cmp::Equal;

    // componentwise dominance
    bool le = true, ge = true;
    auto upd = [&](const Rat& a, const Rat& b) {
        if (a < b) ge = false;
        if (a > b) le = false;
    };
    upd(unit_, o.unit_);
    {
        auto ia = logs_.begin();
        auto ib = o.logs_.begin();
        while (ia != logs_.end() || ib != o.logs_.end()) {
            if (ib == o.logs_.end() || (ia != logs_.end() && ia->first < ib->first)) {
                upd(ia->second, Rat(0));
                ++ia;
            } else if (ia == logs_.end() || ib->first < ia->first) {
                upd(Rat(0), ib->second);
                ++ib;
            } else {
                upd(ia->second, ib->second);
                ++ia;
                ++ib;
            }
        }
    }
    if (le) return Cmp::Less;
    if (ge) return Cmp::Greater;

    if (unit_ == o.unit_) {
        // pure-log comparison: sum a_p log p vs sum b_p log p
        // <=> prod p^(D a_p) vs prod p^(D b_p), D a common denominator.
        Int den = 1;
        std::map<Int, Rat> diff = logs_;
        for (const auto& [p, c] : o.logs_) diff[p] -= c;
        for (const auto& [p, c] : diff) {
            Int l;
            mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
            den = l;
        }
        // estimated bit size of the powers; bail out to intervals if absurd
        double bits_est = 0;
        bool too_big = false;
        for (const auto& [p, c] : diff) {
            Int e = abs(c.get_num() * (den / c.get_den()));
            if (!e.fits_slong_p()) { too_big = true; break; }
            bits_est += static_cast<double>(e.get_si()) * static_cast<double>(mpz_sizeinbase(p.get_mpz_t(), 2));
            if (bits_est > 1e8) { too_big = true; break; }
        }
        if (!too_big) {
            Int left = 1, right = 1;
            for (const auto& [p, c] : diff) {
                Int e = c.get_num() * (den / c.get_den());
                Int pw;
                mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), mpz_get_ui(Int(abs(e)).get_mpz_t()));
                if (e > 0)
                    left *= pw;
                else if (e < 0)
                    right *= pw;
            }
            if (left == right) return Cmp::Equal;
            return left > right ? Cmp::Greater : Cmp::Less;
        }
    }

    // mixed unit + log: interval evaluation, doubling precision
    Rat du = unit_ - o.unit_;
    std::map<Int, Rat> diff = logs_;
    for (const auto& [p, c] : o.logs_) diff[p] -= c;
    for (auto it = diff.begin(); it != diff.end();) {
        if (it->second == 0)
            it = diff.erase(it);
        else
            ++it;
    }
    for (unsigned bits = 64; bits <= max_bits; bits *= 2) {
        int s = interval_sign(du, diff, bits);
        if (s > 0) return Cmp::Greater;
        if (s < 0) return Cmp::Less;
    }
    return Cmp::Incomparable;
}

std::string LengthValue::str() const {
    if (infinite_) return "oo";
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    if (unit_ != 0) {
        os << unit_.get_str();
        first = false;
    }
    for (const auto& [p, c] : logs_) {
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << c.get_str() << "*";
        os << "log " << p.get_str();
    }
    return os.str();
}

LengthValue lv_add(const LengthValue& a, const LengthValue& b) { return a + b; }

LengthValue lv_of_group_order(const Int& n) { return LengthValue::log_of_order(n); }

Cmp lv_compare(const LengthValue& a, const LengthValue& b, unsigned max_bits) {
    return a.compare(b, max_bits);
}

LengthValue lv_sup(const LengthValue& a, const LengthValue& b) {
    switch (lv_compare(a, b)) {
        case Cmp::Less: return b;
        case Cmp::Incomparable: throw ArithError("lv_sup: incomparable values");
        default: return a;
    }
}

MuMonomial::MuMonomial(LengthValue coeff, int degree) {
    if (degree < 0) throw ArithError("MuMonomial: negative degree");
    if (coeff.is_zero()) return;  // zero monomial
    coeff_ = std::move(coeff);
    degree_ = degree;
}

int MuMonomial::degree() const {
    if (!degree_) throw ArithError("MuMonomial::degree on zero monomial");
    return *degree_;
}

bool MuMonomial::operator==(const MuMonomial& o) const {
    if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
    return *degree_ == *o.degree_ && coeff_ == o.coeff_;
}

std::string MuMonomial::str() const {
    if (is_zero()) return "0";
    std::string c = coeff_.str();
    if (c.find(' ') != std::string::npos || c.find('+') != std::string::npos) c = "(" + c + ")";
    return c + "*t^" + std::to_string(*degree_);
}

MuMonomial mu_oplus(const MuMonomial& a, const MuMonomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() > b.degree()) return a;
    if (b.degree() > a.degree()) return b;
    return MuMonomial(a.coeff() + b.coeff(), a.degree());
}

MuMonomial mu_sup(const MuMonomial& a, const MuMonomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() > b.degree()) return a;
    if (b.degree() > a.degree()) return b;
    return MuMonomial(lv_sup(a.coeff(), b.coeff()), a.degree());
}

}  // namespace lenhil
