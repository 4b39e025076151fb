#include "lenhil/hilbert.hpp"

#include <algorithm>
#include <sstream>

namespace lenhil {

LogLin loglin_of(const LengthValue& v) {
    if (v.is_infinite()) throw NotLambdaFinite("loglin_of: infinite value");
    LogLin l;
    if (v.unit() != 0) l[0] = v.unit();
    for (const auto& [p, c] : v.logs()) l[p] = c;
    return l;
}

LengthValue loglin_to_length(const LogLin& l) {
    LengthValue v;
    for (const auto& [p, c] : l) {
        if (c == 0) continue;
        if (c < 0) throw ArithError("loglin_to_length: negative coefficient " + loglin_str(l));
        v += (p == 0) ? LengthValue::from_unit(c) : LengthValue::log_term(p, c);
    }
    return v;
}

LogLin loglin_add(const LogLin& a, const LogLin& b) {
    LogLin r = a;
    for (const auto& [p, c] : b) {
        r[p] += c;
        if (r[p] == 0) r.erase(p);
    }
    return r;
}

LogLin loglin_sub(const LogLin& a, const LogLin& b) {
    LogLin r = a;
    for (const auto& [p, c] : b) {
        r[p] -= c;
        if (r[p] == 0) r.erase(p);
    }
    return r;
}

LogLin loglin_scale(const LogLin& a, const Rat& c) {
    LogLin r;
    if (c == 0) return r;
    for (const auto& [p, cc] : a) r[p] = cc * c;
    return r;
}

std::string loglin_str(const LogLin& l) {
    if (l.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : l) {
        if (!first) os << " + ";
        first = false;
        if (p == 0) {
            os << c.get_str();
        } else {
            if (c != 1) os << c.get_str() << "*";
            os << "log " << p.get_str();
        }
    }
    return os.str();
}

LogLin EventualPolynomial::evaluate(const std::vector<long>& n) const {
    LogLin out;
    for (const auto& [e, c] : coeffs) {
        Rat m = 1;
        for (int j = 0; j < nvars; ++j) {
            Int pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(n[j]),
                          static_cast<unsigned long>(e[j]));
            m *= Rat(pw);
        }
        out = loglin_add(out, loglin_scale(c, m));
    }
    return out;
}

LengthValue EventualPolynomial::evaluate_length(const std::vector<long>& n) const {
    return loglin_to_length(evaluate(n));
}

int EventualPolynomial::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : coeffs) {
        if (c.empty()) continue;
        int t = 0;
        for (int x : e) t += x;
        d = std::max(d, t);
    }
    return d;
}

std::map<std::vector<int>, LogLin> EventualPolynomial::leading_homogeneous_component() const {
    std::map<std::vector<int>, LogLin> out;
    int d = total_degree();
    if (d < 0) return out;
    for (const auto& [e, c] : coeffs) {
        int t = 0;
        for (int x : e) t += x;
        if (t == d && !c.empty()) out.emplace(e, c);
    }
    return out;
}

MuMonomial EventualPolynomial::leading_mu() const {
    if (nvars != 1) throw ArithError("leading_mu: univariate polynomials only");
    int best = -1;
    for (const auto& [e, c] : coeffs)
        if (!c.empty()) best = std::max(best, e[0]);
    if (best < 0) return MuMonomial::zero();
    return MuMonomial(loglin_to_length(coeffs.at({best})), best);
}

std::string EventualPolynomial::str(const std::string& var) const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        const auto& [e, c] = *it;
        if (c.empty()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << loglin_str(c) << ")";
        for (int j = 0; j < nvars; ++j) {
            if (e[j] == 0) continue;
            os << "*" << (nvars == 1 ? var : var + std::to_string(j + 1));
            if (e[j] > 1) os << "^" << e[j];
        }
    }
    if (first) return "0";
    return os.str();
}

std::string NumeratorPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t m = 0; m < coeffs.size(); ++m) {
        if (coeffs[m].empty()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << loglin_str(coeffs[m]) << ")";
        if (m == 1) os << "*t";
        if (m > 1) os << "*t^" << m;
    }
    if (first) return "0";
    return os.str();
}

NumeratorPoly generating_numerator(const GrowthSeries& series, const std::vector<int>& weights) {
    for (const auto& v : series.values)
        if (v.is_infinite()) throw NotRational("generating_numerator: series has an infinite value");
    long n_max = static_cast<long>(series.values.size()) - 1;
    int k = static_cast<int>(weights.size());
    int guard = std::max(k + 2, 6);
    if (n_max + 1 < guard + 1) throw NotRational("generating_numerator: series too short for the guard window");

    // expand (1 - t) * prod (1 - t^{g_i})
    std::vector<Rat> denom{1, -1};
    for (int g : weights) {
        std::vector<Rat> next(denom.size() + static_cast<size_t>(g), 0);
        for (size_t i = 0; i < denom.size(); ++i) {
            next[i] += denom[i];
            next[i + g] -= denom[i];
        }
        denom = std::move(next);
    }

    std::vector<LogLin> vals;
    for (const auto& v : series.values) vals.push_back(loglin_of(v));
    std::vector<LogLin> prod(static_cast<size_t>(n_max) + 1);
    for (long m = 0; m <= n_max; ++m) {
        LogLin acc;
        for (size_t i = 0; i < denom.size() && static_cast<long>(i) <= m; ++i)
            acc = loglin_add(acc, loglin_scale(vals[m - i], denom[i]));
        prod[m] = std::move(acc);
    }
    for (long m = n_max - guard + 1; m <= n_max; ++m)
        if (!prod[m].empty())
            throw NotRational("generating_numerator: numerator support reaches the guard window");
    long last = -1;
    for (long m = 0; m <= n_max - guard; ++m)
        if (!prod[m].empty()) last = m;
    NumeratorPoly out;
    out.denominator_weights = weights;
    out.coeffs.assign(prod.begin(), prod.begin() + (last + 1));
    return out;
}

namespace {

// coefficients of C(n - n0, j) as a polynomial in n
std::vector<Rat> binomial_poly(long n0, int j) {
    std::vector<Rat> poly{1};  // product of (n - n0 - i) / (i + 1)
    for (int i = 0; i < j; ++i) {
        std::vector<Rat> next(poly.size() + 1, 0);
        Rat shift = -Rat(n0 + i);
        for (size_t d = 0; d < poly.size(); ++d) {
            next[d + 1] += poly[d];
            next[d] += poly[d] * shift;
        }
        Rat div(1, i + 1);
        for (auto& c : next) c *= div;
        poly = std::move(next);
    }
    return poly;
}

}  // namespace

EventualPolynomial fit_eventual_polynomial(const GrowthSeries& series, int max_deg, int guard) {
    for (const auto& v : series.values)
        if (v.is_infinite()) throw NotLambdaFinite("fit: series has an infinite value");
    long n_max = static_cast<long>(series.values.size()) - 1;
    if (n_max + 1 < max_deg + guard + 2)
        throw NotStabilized("fit: series shorter than max_deg + guard + 2");

    std::vector<LogLin> vals;
    for (const auto& v : series.values) vals.push_back(loglin_of(v));

    for (long n0 = 0; n0 + max_deg + guard <= n_max; ++n0) {
        // forward differences at n0
        std::vector<LogLin> diff(vals.begin() + n0, vals.begin() + n0 + max_deg + 1);
        for (int t = 1; t <= max_deg; ++t)
            for (int i = max_deg; i >= t; --i) diff[i] = loglin_sub(diff[i], diff[i - 1]);

        EventualPolynomial q;
        q.nvars = 1;
        q.stable_from = {n0};
        q.per_var_bounds = {max_deg};
        for (int j = 0; j <= max_deg; ++j) {
            if (diff[j].empty()) continue;
            auto bp = binomial_poly(n0, j);
            for (size_t d = 0; d < bp.size(); ++d) {
                if (bp[d] == 0) continue;
                std::vector<int> key{static_cast<int>(d)};
                auto it = q.coeffs.find(key);
                LogLin add = loglin_scale(diff[j], bp[d]);
                if (it == q.coeffs.end())
                    q.coeffs.emplace(key, std::move(add));
                else {
                    it->second = loglin_add(it->second, add);
                    if (it->second.empty()) q.coeffs.erase(it);
                }
            }
        }
        for (auto it = q.coeffs.begin(); it != q.coeffs.end();) {
            if (it->second.empty())
                it = q.coeffs.erase(it);
            else
                ++it;
        }

        bool ok = true;
        for (long n = n0; n <= n_max && ok; ++n)
            if (q.evaluate({n}) != vals[n]) ok = false;
        if (ok) return q;
    }
    throw NotStabilized("fit: no stabilization point within the sampled window");
}

EventualPolynomial fit_multivariate(const GrowthSeries& series, const std::vector<int>& per_var_bounds,
                                    int guard) {
    if (series.kind != SeriesKind::MultiBox) throw NotStabilized("fit_multivariate: MultiBox series required");
    int l = static_cast<int>(series.box.size());
    if (static_cast<int>(per_var_bounds.size()) != l)
        throw NotStabilized("fit_multivariate: bound arity mismatch");
    for (const auto& v : series.values)
        if (v.is_infinite()) throw NotLambdaFinite("fit_multivariate: infinite value");

    std::vector<LogLin> vals;
    for (const auto& v : series.values) vals.push_back(loglin_of(v));
    auto value_at = [&](const std::vector<long>& m) -> const LogLin& {
        return vals[static_cast<size_t>(series.box_index(m))];
    };

    // all candidate corners, ordered by (sum, lex)
    std::vector<std::vector<long>> corners;
    {
        std::vector<long> c(l, 0);
        while (true) {
            bool feasible = true;
            for (int j = 0; j < l; ++j)
                if (c[j] + per_var_bounds[j] + guard > series.box[j]) feasible = false;
            if (feasible) corners.push_back(c);
            int j = l - 1;
            while (j >= 0) {
                if (++c[j] <= series.box[j]) break;
                c[j] = 0;
                --j;
            }
            if (j < 0) break;
        }
        std::stable_sort(corners.begin(), corners.end(),
                         [](const std::vector<long>& a, const std::vector<long>& b) {
                             long sa = 0, sb = 0;
                             for (long x : a) sa += x;
                             for (long x : b) sb += x;
                             if (sa != sb) return sa < sb;
                             return a < b;
                         });
    }
    if (corners.empty()) throw NotStabilized("fit_multivariate: box too small for bounds + guard");

    for (const auto& c : corners) {
        // tensor of mixed forward differences on the grid [c, c + p]
        std::vector<int> dims(l);
        long count = 1;
        for (int j = 0; j < l; ++j) {
            dims[j] = per_var_bounds[j] + 1;
            count *= dims[j];
        }
        std::vector<LogLin> grid(static_cast<size_t>(count));
        std::vector<long> idx(l, 0);
        for (long flat = 0; flat < count; ++flat) {
            long rest = flat;
            std::vector<long> point(l);
            for (int j = l - 1; j >= 0; --j) {
                point[j] = c[j] + rest % dims[j];
                rest /= dims[j];
            }
            grid[flat] = value_at(point);
        }
        // difference along each axis
        for (int j = l - 1; j >= 0; --j) {
            long stride = 1;
            for (int jj = j + 1; jj < l; ++jj) stride *= dims[jj];
            long outer = count / (dims[j] * stride);
            for (long o = 0; o < outer; ++o)
                for (long s = 0; s < stride; ++s) {
                    long base = o * dims[j] * stride + s;
                    for (int t = 1; t < dims[j]; ++t)
                        for (int i = dims[j] - 1; i >= t; --i)
                            grid[base + i * stride] =
                                loglin_sub(grid[base + i * stride], grid[base + (i - 1) * stride]);
                }
        }

        EventualPolynomial q;
        q.nvars = l;
        q.stable_from = c;
        q.per_var_bounds = per_var_bounds;
        std::vector<long> iv(l, 0);
        for (long flat = 0; flat < count; ++flat) {
            long rest = flat;
            std::vector<int> ii(l);
            for (int j = l - 1; j >= 0; --j) {
                ii[j] = static_cast<int>(rest % dims[j]);
                rest /= dims[j];
            }
            if (grid[flat].empty()) continue;
            // expand prod_j C(n_j - c_j, i_j)
            std::map<std::vector<int>, Rat> mono{{std::vector<int>(l, 0), Rat(1)}};
            for (int j = 0; j < l; ++j) {
                auto bp = binomial_poly(c[j], ii[j]);
                std::map<std::vector<int>, Rat> next;
                for (const auto& [e, co] : mono)
                    for (size_t d = 0; d < bp.size(); ++d) {
                        if (bp[d] == 0) continue;
                        auto e2 = e;
                        e2[j] += static_cast<int>(d);
                        next[e2] += co * bp[d];
                    }
                mono = std::move(next);
            }
            for (const auto& [e, co] : mono) {
                if (co == 0) continue;
                auto it = q.coeffs.find(e);
                LogLin add = loglin_scale(grid[flat], co);
                if (it == q.coeffs.end())
                    q.coeffs.emplace(e, std::move(add));
                else {
                    it->second = loglin_add(it->second, add);
                    if (it->second.empty()) q.coeffs.erase(it);
                }
            }
        }
        for (auto it = q.coeffs.begin(); it != q.coeffs.end();) {
            if (it->second.empty())
                it = q.coeffs.erase(it);
            else
                ++it;
        }

        // verify against every sample >= c componentwise
        bool ok = true;
        std::vector<long> m(l, 0);
        while (ok) {
            bool in_region = true;
            for (int j = 0; j < l; ++j)
                if (m[j] < c[j]) in_region = false;
            if (in_region && q.evaluate(m) != value_at(m)) ok = false;
            int j = l - 1;
            while (j >= 0) {
                if (++m[j] <= series.box[j]) break;
                m[j] = 0;
                --j;
            }
            if (j < 0) break;
        }
        if (ok) return q;
    }
    throw NotStabilized("fit_multivariate: no stabilization corner within the sampled box");
}

MuResult mu(const Presentation& m, const SubmoduleGens& v0, LengthSpec spec, long max_samples,
            int threads) {
    ModuleSlicer slicer(m, spec);
    LengthValue lam0 = slicer.growth_value(v0, 0);
    if (lam0.is_infinite()) throw NotLambdaFinite("mu: lambda(V0) is infinite");

    int k = m.ring.k;
    int guard = k + 3;
    long n = std::max<long>(2 * k + 8, k + guard + 2);
    std::string last_err = "mu: not stabilized";
    while (true) {
        GrowthSeries s = slicer.series(v0, std::min(n, max_samples), SeriesKind::Growth, threads);
        try {
            EventualPolynomial q = fit_eventual_polynomial(s, k, guard);
            MuResult r;
            r.mu = q.leading_mu();
            r.poly = std::move(q);
            r.samples_used = std::min(n, max_samples);
            r.guard = guard;
            return r;
        } catch (const NotStabilized& e) {
            last_err = e.what();
            if (n >= max_samples) break;
            n *= 2;
        }
    }
    throw NotStabilized(last_err + std::string(" (budget exhausted)"));
}

int lambda_dimension(const MuMonomial& mu) {
    if (mu.is_zero()) throw ZeroMu("lambda_dimension: mu is the zero monomial");
    return mu.degree();
}

LengthValue lambda_degree(const MuMonomial& mu) {
    if (mu.is_zero()) return LengthValue();
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(mu.degree()));
    return mu.coeff().scaled(Rat(f));
}

LengthValue entropy_d(const MuMonomial& mu, int d) {
    if (mu.is_zero()) return LengthValue();  // deg 0-monomial is -oo, below any d
    if (mu.degree() > d) return LengthValue::infinity();
    if (mu.degree() < d) return LengthValue();
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(d));
    return mu.coeff().scaled(Rat(f));
}

}  // namespace lenhil
