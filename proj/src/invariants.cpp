#include "lenhil/invariants.hpp"

#include <algorithm>

namespace lenhil {

std::string verdict_name(ChainVerdict v) {
    switch (v) {
        case ChainVerdict::Stabilized: return "Stabilized";
        case ChainVerdict::UnboundedEvidence: return "UnboundedEvidence";
        case ChainVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

MuResult samuel_mu_bar(const Presentation& m, LengthSpec spec, long max_samples, int threads) {
    ModuleSlicer slicer(m, spec);
    if (slicer.samuel_value(0).is_infinite()) throw NotLambdaFinite("samuel_mu_bar: lambda(M/IM) infinite");
    int k = m.ring.k;
    int guard = k + 3;
    long n = std::max<long>(2 * k + 8, k + guard + 2);
    std::string last_err = "samuel_mu_bar: not stabilized";
    while (true) {
        GrowthSeries s = slicer.series(SubmoduleGens::unit_generators(slicer.lifted()),
                                       std::min(n, max_samples), SeriesKind::Samuel, threads);
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

namespace {

std::vector<Int> distinct_lcm_chain(int chain_length) {
    std::vector<Int> out;
    for (int j = 2; j <= chain_length; ++j) {
        Int m = lcm_upto(j);
        if (out.empty() || m != out.back()) out.push_back(m);
    }
    return out;
}

// evidence threshold: coefficient beyond 2^20 * log 2 at a fixed degree
bool exceeds_threshold(const LengthValue& v) {
    if (v.is_infinite()) return true;
    LengthValue bound = LengthValue::log_term(2, Rat(Int(1) << 20));
    return lv_compare(v, bound) == Cmp::Greater;
}

template <class T, class Equal, class Less>
ChainVerdict chain_verdict(const std::vector<T>& sups, bool threshold_hit, Equal eq, Less lt) {
    size_t n = sups.size();
    if (n >= 3 && eq(sups[n - 1], sups[n - 2]) && eq(sups[n - 2], sups[n - 3]))
        return ChainVerdict::Stabilized;
    if (threshold_hit) return ChainVerdict::UnboundedEvidence;
    int run = 0;
    for (size_t i = 1; i < n; ++i) {
        run = lt(sups[i - 1], sups[i]) ? run + 1 : 0;
        if (run >= 5) return ChainVerdict::UnboundedEvidence;
    }
    return ChainVerdict::Inconclusive;
}

bool mu_less(const MuMonomial& a, const MuMonomial& b) {
    if (a == b) return false;
    if (a.is_zero()) return true;
    if (b.is_zero()) return false;
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return lv_compare(a.coeff(), b.coeff()) == Cmp::Less;
}

}  // namespace

HatEstimate hat_mu_chain(const Presentation& m, int chain_length, long max_samples, int threads) {
    if (m.ring.base != BaseKind::Integers) throw ModuleError("hat_mu_chain: base must be Z");
    LengthSpec spec{LengthKind::LogCard};
    HatEstimate est;
    bool threshold_hit = false;
    for (const Int& mod : distinct_lcm_chain(chain_length)) {
        Presentation q = quotient_mod_integer(m, mod);
        MuResult r = mu(q, SubmoduleGens::unit_generators(q), spec, max_samples, threads);
        est.chain.push_back(HatStep{mod, r.mu});
        est.sup = mu_sup(est.sup, r.mu);
        est.running_sup.push_back(est.sup);
        if (!est.sup.is_zero() && exceeds_threshold(est.sup.coeff())) threshold_hit = true;
    }
    est.verdict = chain_verdict(
        est.running_sup, threshold_hit, [](const MuMonomial& a, const MuMonomial& b) { return a == b; },
        mu_less);
    return est;
}

HatValueEstimate hat_entropy_d(const Presentation& m, int d, int chain_length, long max_samples,
                               int threads) {
    if (m.ring.base != BaseKind::Integers) throw ModuleError("hat_entropy_d: base must be Z");
    LengthSpec spec{LengthKind::LogCard};
    HatValueEstimate est;
    std::vector<LengthValue> sups;
    bool threshold_hit = false;
    for (const Int& mod : distinct_lcm_chain(chain_length)) {
        Presentation q = quotient_mod_integer(m, mod);
        MuResult r = mu(q, SubmoduleGens::unit_generators(q), spec, max_samples, threads);
        LengthValue h = entropy_d(r.mu, d);
        est.chain.emplace_back(mod, h);
        est.sup = lv_sup(est.sup, h);
        sups.push_back(est.sup);
        if (exceeds_threshold(est.sup)) threshold_hit = true;
    }
    est.verdict = chain_verdict(
        sups, threshold_hit, [](const LengthValue& a, const LengthValue& b) { return a == b; },
        [](const LengthValue& a, const LengthValue& b) { return lv_compare(a, b) == Cmp::Less; });
    return est;
}

MuResult intrinsic_mu(const Presentation& m, const SubmoduleGens& v0, LengthSpec spec,
                      long max_samples, int threads) {
    ModuleSlicer slicer(m, spec);
    if (slicer.intrinsic_step_value(v0, 0).is_infinite())
        throw NotInert("intrinsic_mu: lambda((S_1 V0)/V0) is infinite");
    int k = m.ring.k;
    if (k < 1) throw ModuleError("intrinsic_mu: needs k >= 1");
    int deg = k - 1;
    int guard = k + 3;
    long n = std::max<long>(2 * k + 8, deg + guard + 2);
    std::string last_err = "intrinsic_mu: not stabilized";
    while (true) {
        GrowthSeries s = slicer.series(v0, std::min(n, max_samples), SeriesKind::IntrinsicStep, threads);
        try {
            EventualPolynomial q = fit_eventual_polynomial(s, deg, guard);
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

std::optional<int> intrinsic_dimension(const MuMonomial& mu_tilde, const LengthValue& lambda_a) {
    if (!mu_tilde.is_zero()) return mu_tilde.degree() + 1;
    if (!lambda_a.is_zero()) return 0;
    return std::nullopt;  // -oo
}

LengthValue intrinsic_entropy_i(const MuMonomial& mu_tilde, int i, const LengthValue& lambda_a) {
    if (!mu_tilde.is_zero()) {
        int d = mu_tilde.degree();
        if (i > d + 1) return LengthValue();
        if (i <= d) return LengthValue::infinity();
        Int f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(d + 1));
        return mu_tilde.coeff().scaled(Rat(f));
    }
    if (i >= 1) return LengthValue();
    return lambda_a;
}

MuMonomial mu_general_lower_bound(const Presentation& m, const std::vector<SubmoduleGens>& families,
                                  LengthSpec spec, long max_samples, int threads) {
    ModuleSlicer slicer(m, spec);
    MuMonomial join;
    for (const auto& fam : families) {
        if (slicer.growth_value(fam, 0).is_infinite()) continue;  // not admissible, skip
        MuResult r = mu(m, fam, spec, max_samples, threads);
        join = mu_sup(join, r.mu);
    }
    return join;
}

}  // namespace lenhil
