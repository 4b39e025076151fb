// lenhil: exact Hilbert series / polynomial / entropy invariants of finitely
// presented modules over polynomial rings, for general length functions.

#include "lenhil/io.hpp"
#include "lenhil/oracles.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

using namespace lenhil;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitHypothesis = 3;
constexpr int kExitNotStabilized = 4;
constexpr int kExitCheckFailed = 5;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProblemParseError("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_atomic(out_path, content);
}

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
    return out;
}

int default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// ---- mu command ----------------------------------------------------------

LengthValue module_length_from_fit(const MuResult& r) {
    if (r.poly.total_degree() >= 1) return LengthValue::infinity();
    if (r.poly.coeffs.empty()) return LengthValue();
    return r.poly.evaluate_length(r.poly.stable_from);
}

void print_entropies(const MuMonomial& m, int k) {
    for (int d = 0; d <= k; ++d)
        std::cout << "h^(" << d << ") = " << entropy_d(m, d).str() << "\n";
    std::cout << "note: entropy normalization is h^(d) = d! * leading coefficient\n";
}

// When the base is Z/p^e, print the log_n-normalized coefficient next to the
// exact unnormalized one.
void print_lognormalized(const MuMonomial& m, const RingSpec& ring) {
    if (ring.base != BaseKind::IntegersModN || m.is_zero() || m.coeff().is_infinite()) return;
    auto factors = factorize(ring.n);
    if (factors.size() != 1) {
        std::cerr << "note: --lognormalize needs a prime-power modulus; skipped\n";
        return;
    }
    try {
        LengthValue scaled = m.coeff().rescaled_log_base(factors[0].first, factors[0].second);
        std::cout << "log_n-normalized: " << MuMonomial(scaled, m.degree()).str() << "\n";
    } catch (const ArithError&) {
        std::cerr << "note: coefficient not supported on log " << factors[0].first.get_str()
                  << "; --lognormalize skipped\n";
    }
}

int run_mu(const Problem& prob, const std::string& variant, long budget, int chain, int threads,
           bool lognormalize) {
    int k = prob.module.ring.k;
    if (variant == "plain" || variant == "samuel") {
        MuResult r = variant == "plain" ? mu(prob.module, prob.v0, prob.length, budget, threads)
                                        : samuel_mu_bar(prob.module, prob.length, budget, threads);
        std::cout << (variant == "plain" ? "mu" : "mu-bar") << " = " << r.mu.str() << "\n";
        if (lognormalize) print_lognormalized(r.mu, prob.module.ring);
        std::cout << "polynomial: q(n) = " << r.poly.str() << "\n";
        if (r.mu.is_zero())
            std::cout << "lambda-dimension: undefined (mu = 0)\n";
        else
            std::cout << "lambda-dimension = " << lambda_dimension(r.mu) << "\n";
        std::cout << "lambda-degree = " << lambda_degree(r.mu).str() << "\n";
        print_entropies(r.mu, k);
        std::cout << "certificate: n0 = " << r.poly.stable_from[0] << ", samples = " << r.samples_used
                  << ", guard = " << r.guard << "\n";
        return 0;
    }
    if (variant == "intrinsic") {
        MuResult r = intrinsic_mu(prob.module, prob.v0, prob.length, budget, threads);
        std::cout << "mu-tilde = " << r.mu.str() << "\n";
        std::cout << "polynomial: q~(n) = " << r.poly.str() << "\n";
        LengthValue lam_a;
        ModuleSlicer slicer(prob.module, prob.length);
        if (slicer.growth_value(prob.v0, 0).is_infinite()) {
            lam_a = LengthValue::infinity();
        } else {
            MuResult g = mu(prob.module, prob.v0, prob.length, budget, threads);
            lam_a = module_length_from_fit(g);
        }
        auto dim = intrinsic_dimension(r.mu, lam_a);
        if (dim)
            std::cout << "intrinsic dimension = " << *dim << "\n";
        else
            std::cout << "intrinsic dimension = -oo\n";
        for (int i = 0; i <= k; ++i)
            std::cout << "h~^(" << i << ") = " << intrinsic_entropy_i(r.mu, i, lam_a).str() << "\n";
        std::cout << "note: entropy normalization is h~^(d+1) = (d+1)! * leading coefficient\n";
        std::cout << "certificate: n0 = " << r.poly.stable_from[0] << ", samples = " << r.samples_used
                  << ", guard = " << r.guard << "\n";
        return 0;
    }
    if (variant == "hat") {
        HatEstimate est = hat_mu_chain(prob.module, chain, budget, threads);
        std::cout << "mu-hat chain (m = lcm(1..j)):\n";
        for (size_t i = 0; i < est.chain.size(); ++i)
            std::cout << "  m = " << est.chain[i].modulus.get_str() << ": mu(M/mM) = "
                      << est.chain[i].mu.str() << "  (sup so far " << est.running_sup[i].str() << ")\n";
        std::cout << "sup = " << est.sup.str() << "\n";
        std::cout << "verdict = " << verdict_name(est.verdict) << "\n";
        if (est.verdict == ChainVerdict::UnboundedEvidence && !est.sup.is_zero())
            std::cout << "evidence toward oo*t^" << est.sup.degree() << "\n";
        for (int d = 0; d <= k; ++d) {
            HatValueEstimate h = hat_entropy_d(prob.module, d, chain, budget, threads);
            std::cout << "h-hat^(" << d << ") sup = " << h.sup.str() << " ["
                      << verdict_name(h.verdict) << "]\n";
        }
        return 0;
    }
    throw CLI::ValidationError("--variant must be plain, hat, intrinsic or samuel");
}

// ---- paper-table ----------------------------------------------------------

struct TableRow {
    std::string label, invariant, expected, computed;
    bool ok;
};

class Table {
public:
    bool all_ok = true;
    void add(const std::string& label, const std::string& inv, const std::string& expected,
             const std::string& computed, bool ok) {
        rows_.push_back({label, inv, expected, computed, ok});
        all_ok = all_ok && ok;
    }
    void print() const {
        for (const auto& r : rows_)
            std::printf("%-22s %-12s expected %-22s computed %-22s %s\n", r.label.c_str(),
                        r.invariant.c_str(), r.expected.c_str(), r.computed.c_str(),
                        r.ok ? "ok" : "MISMATCH");
    }

private:
    std::vector<TableRow> rows_;
};

MuMonomial mu_alpha_lower_bound(const Presentation& m, long budget) {
    // families m * (unit generators), m = 1, 2, 3; torsion-free modules admit
    // none of them and the supremum is 0
    std::vector<SubmoduleGens> fams;
    for (int c : {1, 2, 3}) {
        std::vector<FreeVec> elems;
        for (int i = 0; i < m.gens; ++i) {
            FreeVec v(m.gens, m.ring.k);
            v.comps[i] = Poly::constant(m.ring.k, c);
            elems.push_back(std::move(v));
        }
        fams.push_back(SubmoduleGens::of(std::move(elems)));
    }
    return mu_general_lower_bound(m, fams, LengthSpec{LengthKind::LogCard}, budget);
}

int run_paper_table(int chain, long budget, int threads) {
    Table table;
    RingSpec zx = RingSpec::integers(1);
    LengthSpec alpha{LengthKind::LogCard};
    LengthSpec beta{LengthKind::Rank};

    auto mu_str = [](const MuMonomial& m) { return m.str(); };
    auto expect_mu = [&](const std::string& label, const std::string& inv, const MuMonomial& got,
                         const MuMonomial& want) {
        table.add(label, inv, mu_str(want), mu_str(got), got == want);
    };
    auto hat_unbounded = [&](const std::string& label, const Presentation& m, int degree) {
        HatEstimate est = hat_mu_chain(m, chain, budget, threads);
        bool ok = est.verdict == ChainVerdict::UnboundedEvidence && !est.sup.is_zero() &&
                  est.sup.degree() == degree;
        std::ostringstream want, got;
        want << "oo*t^" << degree << " evidence";
        got << verdict_name(est.verdict) << " sup " << est.sup.str();
        table.add(label, "mu-hat", want.str(), got.str(), ok);
    };
    auto hat_stabilized = [&](const std::string& label, const Presentation& m, const MuMonomial& want) {
        HatEstimate est = hat_mu_chain(m, chain, budget, threads);
        bool ok = est.verdict == ChainVerdict::Stabilized && est.sup == want;
        std::ostringstream w, g;
        w << "Stabilized at " << want.str();
        g << verdict_name(est.verdict) << " sup " << est.sup.str();
        table.add(label, "mu-hat", w.str(), g.str(), ok);
    };
    auto mono = [](const LengthValue& c, int d) { return MuMonomial(c, d); };
    auto unit_mu = [&](const Presentation& m, LengthSpec s) {
        return mu(m, SubmoduleGens::unit_generators(m), s, budget, threads).mu;
    };

    // row I = 0: Z[x]
    {
        Presentation m = from_ideal_quotient(zx, {});
        expect_mu("Z[x], I=0", "mu_alpha", mu_alpha_lower_bound(m, budget), MuMonomial::zero());
        hat_unbounded("Z[x], I=0", m, 1);
        expect_mu("Z[x], I=0", "mu_beta", unit_mu(m, beta), mono(LengthValue::from_unit(1), 1));
    }
    // row I = S: the zero module
    {
        Presentation m = from_ideal_quotient(zx, {Poly::constant(1, 1)});
        expect_mu("Z[x], I=S", "mu_alpha", unit_mu(m, alpha), MuMonomial::zero());
        hat_stabilized("Z[x], I=S", m, MuMonomial::zero());
        expect_mu("Z[x], I=S", "mu_beta", unit_mu(m, beta), MuMonomial::zero());
    }
    // rows I = (n)
    for (int n : {2, 5, 6}) {
        Presentation m = from_ideal_quotient(zx, {Poly::constant(1, n)});
        std::string label = "Z[x]/(" + std::to_string(n) + ")";
        MuMonomial want = mono(lv_of_group_order(n), 1);
        expect_mu(label, "mu_alpha", unit_mu(m, alpha), want);
        hat_stabilized(label, m, want);
        expect_mu(label, "mu_beta", unit_mu(m, beta), MuMonomial::zero());
    }
    // rows I = (p(x))
    {
        struct Case {
            std::string text;
            int deg;
        };
        for (const Case& c : {Case{"x1^2 - 2", 2}, Case{"x1^3 + x1 + 1", 3}}) {
            Presentation m = from_ideal_quotient(zx, {parse_poly(c.text, 1)});
            std::string label = "Z[x]/(" + c.text + ")";
            expect_mu(label, "mu_alpha", mu_alpha_lower_bound(m, budget), MuMonomial::zero());
            hat_unbounded(label, m, 0);
            expect_mu(label, "mu_beta", unit_mu(m, beta), mono(LengthValue::from_unit(c.deg), 0));
        }
    }
    // rows I = (p(x), n), p monic
    {
        struct Case {
            std::string text;
            int deg, n;
        };
        for (const Case& c : {Case{"x1^2 - 2", 2, 5}, Case{"x1^3 + x1 + 1", 3, 2}}) {
            Presentation m = from_ideal_quotient(zx, {parse_poly(c.text, 1), Poly::constant(1, c.n)});
            std::string label = "Z[x]/(" + c.text + ", " + std::to_string(c.n) + ")";
            MuMonomial want = mono(lv_of_group_order(c.n).scaled(c.deg), 0);
            expect_mu(label, "mu_alpha", unit_mu(m, alpha), want);
            hat_stabilized(label, m, want);
            expect_mu(label, "mu_beta", unit_mu(m, beta), MuMonomial::zero());
        }
    }
    // example 2: Z[x,y]/(xy)
    {
        RingSpec zxy = RingSpec::integers(2);
        Presentation m = from_ideal_quotient(zxy, {parse_poly("x1*x2", 2)});
        expect_mu("Z[x,y]/(xy)", "mu_alpha", mu_alpha_lower_bound(m, budget), MuMonomial::zero());
        hat_unbounded("Z[x,y]/(xy)", m, 1);
        expect_mu("Z[x,y]/(xy)", "mu_beta", unit_mu(m, beta),
                  mono(LengthValue::from_unit(2), 1));
    }

    table.print();
    if (!table.all_ok) {
        std::cerr << "paper-table: some entries do not match\n";
        return kExitCheckFailed;
    }
    return 0;
}

// ---- check ----------------------------------------------------------------

int run_check(unsigned long seed, int threads) {
    (void)threads;
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "pass" : "FAIL") << "  " << name;
        if (!ok && !detail.empty()) std::cout << "  [" << detail << "]";
        std::cout << "\n";
        if (!ok) ++failures;
    };

    // suite 1: additivity over F5[x,y] and over torsion Z[x] modules
    {
        std::mt19937_64 rng(seed);
        RingSpec f5 = RingSpec::prime_field(5, 2);
        bool ok = true;
        std::string detail;
        for (int i = 0; i < 50 && ok; ++i) {
            Presentation b = random_presentation(rng, f5);
            SubmoduleGens a0 = random_submodule_gens(rng, b);
            CheckReport r = additivity_check(b, a0, LengthSpec{LengthKind::Dimension});
            if (!r.ok) {
                ok = false;
                detail = "case " + std::to_string(i) + ": " + r.detail;
            }
        }
        report("additivity: 50 random (B, A0) over F5[x,y]", ok, detail);

        ok = true;
        detail.clear();
        for (int i = 0; i < 20 && ok; ++i) {
            Presentation b0 = random_presentation(rng, RingSpec::integers(1));
            Presentation b = quotient_mod_integer(b0, Int(2 + static_cast<long>(rng() % 8)));
            SubmoduleGens a0 = random_submodule_gens(rng, b);
            CheckReport r = additivity_check(b, a0, LengthSpec{LengthKind::LogCard});
            if (!r.ok) {
                ok = false;
                detail = "case " + std::to_string(i) + ": " + r.detail;
            }
        }
        report("additivity: 20 random torsion (B, A0) over Z[x]", ok, detail);
    }

    // suite 2: entropy additivity
    {
        std::mt19937_64 rng(seed + 1);
        RingSpec f5 = RingSpec::prime_field(5, 2);
        bool ok = true;
        std::string detail;
        for (int i = 0; i < 15 && ok; ++i) {
            Presentation b = random_presentation(rng, f5);
            SubmoduleGens a0 = random_submodule_gens(rng, b);
            CheckReport r = entropy_additivity_check(b, a0, LengthSpec{LengthKind::Dimension});
            if (!r.ok) {
                ok = false;
                detail = "case " + std::to_string(i) + ": " + r.detail;
            }
        }
        for (int i = 0; i < 10 && ok; ++i) {
            Presentation b0 = random_presentation(rng, RingSpec::integers(1));
            Presentation b = quotient_mod_integer(b0, Int(2 + static_cast<long>(rng() % 8)));
            SubmoduleGens a0 = random_submodule_gens(rng, b);
            CheckReport r = entropy_additivity_check(b, a0, LengthSpec{LengthKind::LogCard});
            if (!r.ok) {
                ok = false;
                detail = "Z case " + std::to_string(i) + ": " + r.detail;
            }
        }
        report("entropy-additivity: random suites", ok, detail);
    }

    // suite 3: oracle equivalence
    {
        std::mt19937_64 rng(seed + 2);
        bool ok = true;
        std::string detail;
        int done = 0;
        while (done < 100 && ok) {
            int g = 1 + static_cast<int>(rng() % 5);
            int rows = 1 + static_cast<int>(rng() % 5);
            IntMatrix m(rows, g);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < g; ++j) m.at(i, j) = static_cast<long>(rng() % 19) - 9;
            std::optional<Int> order;
            try {
                order = brute_force_group_order(m, 10000);
            } catch (const TooLarge&) {
                continue;  // outside the oracle's contract
            }
            ++done;
            LengthValue via_snf = fp_module_length(m, g, BaseKind::Integers, 0, LengthKind::LogCard);
            LengthValue via_enum = order ? lv_of_group_order(*order) : LengthValue::infinity();
            if (via_snf != via_enum) {
                ok = false;
                detail = "coker mismatch: snf " + via_snf.str() + " vs enumeration " + via_enum.str();
            }
        }
        report("oracle-equivalence: lambda via SNF vs coset enumeration (100 instances)", ok, detail);

        ok = true;
        detail.clear();
        for (int g1 = 1; g1 <= 3 && ok; ++g1)
            for (int g2 = 1; g2 <= 3 && ok; ++g2) {
                std::vector<long> box{9, 9};
                GrowthSeries s;
                s.kind = SeriesKind::MultiBox;
                s.spec = LengthSpec{LengthKind::Rank};
                s.box = box;
                s.partition = {0, 1};
                for (long a = 0; a <= box[0]; ++a)
                    for (long b = 0; b <= box[1]; ++b)
                        s.values.push_back(
                            LengthValue::from_unit(Rat(binom_series_coeff({g1, g2}, {a, b}))));
                try {
                    EventualPolynomial q = fit_multivariate(s, {g1 - 1, g2 - 1}, 3);
                    for (long a = q.stable_from[0]; a <= box[0] && ok; ++a)
                        for (long b = q.stable_from[1]; b <= box[1] && ok; ++b)
                            if (q.evaluate_length({a, b}) !=
                                LengthValue::from_unit(Rat(binom_series_coeff({g1, g2}, {a, b}))))
                                ok = false;
                } catch (const std::exception& e) {
                    ok = false;
                    detail = std::string("fit failed for gamma = (") + std::to_string(g1) + "," +
                             std::to_string(g2) + "): " + e.what();
                }
            }
        report("oracle-equivalence: fits match the convolution oracle up to gamma (3,3)", ok, detail);
    }

    if (failures) {
        std::cerr << failures << " suite(s) failed\n";
        return kExitCheckFailed;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Hilbert series, polynomials and entropy invariants of finitely presented "
                 "modules over R[x1..xk] for general length functions"};
    app.require_subcommand(1);

    std::string input, out_path, out_format = "json", kind = "growth", variant = "plain";
    std::string box_str, partition_str;
    long n = 8;
    long budget = 64;
    int chain = 8;
    int threads = default_threads();
    unsigned long seed = 424243;
    bool lognormalize = false;

    auto* series_cmd = app.add_subcommand("series", "evaluate a lambda-sequence of the module");
    series_cmd->add_option("--input", input, "problem file (JSON)")->required();
    series_cmd->add_option("--kind", kind, "growth|samuel|intrinsic|multibox|graded");
    series_cmd->add_option("--n", n, "compute values for 0..N");
    series_cmd->add_option("--box", box_str, "multibox bounds, e.g. 4,4");
    series_cmd->add_option("--partition", partition_str, "block id per variable (1-based), e.g. 1,2");
    series_cmd->add_option("--out", out_format, "json|csv");
    series_cmd->add_option("--output", out_path, "write atomically to this file instead of stdout");
    series_cmd->add_option("--threads", threads, "worker threads (result is thread-count independent)");

    auto* mu_cmd = app.add_subcommand("mu", "leading-term invariants of the Hilbert polynomial");
    mu_cmd->add_option("--input", input, "problem file (JSON)")->required();
    mu_cmd->add_option("--variant", variant, "plain|hat|intrinsic|samuel");
    mu_cmd->add_option("--budget", budget, "max series length for fitting");
    mu_cmd->add_option("--chain", chain, "lambda-cofinite chain length J for the hat variant");
    mu_cmd->add_option("--threads", threads, "worker threads");
    mu_cmd->add_flag("--lognormalize", lognormalize,
                     "also print log_n-normalized coefficients (Z/p^e bases)");

    auto* table_cmd = app.add_subcommand("paper-table", "recompute the reference invariant table");
    table_cmd->add_option("--chain", chain, "chain length J");
    table_cmd->add_option("--budget", budget, "max series length for fitting");
    table_cmd->add_option("--threads", threads, "worker threads");

    auto* check_cmd = app.add_subcommand("check", "run the randomized verification suites");
    check_cmd->add_option("--seed", seed, "random seed (fixed default; runs are reproducible)");
    check_cmd->add_option("--threads", threads, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (series_cmd->parsed()) {
            Problem prob = parse_problem(read_file(input));
            ModuleSlicer slicer(prob.module, prob.length);
            GrowthSeries s;
            if (kind == "multibox") {
                if (box_str.empty()) throw CLI::ValidationError("multibox needs --box");
                std::vector<long> box = parse_long_list(box_str);
                std::vector<int> part;
                if (partition_str.empty()) {
                    for (int i = 0; i < prob.module.ring.k; ++i)
                        part.push_back(i < static_cast<int>(box.size()) ? i
                                                                        : static_cast<int>(box.size()) - 1);
                } else {
                    for (long x : parse_long_list(partition_str)) part.push_back(static_cast<int>(x) - 1);
                }
                s = slicer.multibox_series(prob.v0, part, box, threads);
            } else {
                SeriesKind sk;
                if (kind == "growth")
                    sk = SeriesKind::Growth;
                else if (kind == "samuel")
                    sk = SeriesKind::Samuel;
                else if (kind == "intrinsic")
                    sk = SeriesKind::IntrinsicStep;
                else if (kind == "graded")
                    sk = SeriesKind::GradedSlice;
                else
                    throw CLI::ValidationError("unknown --kind " + kind);
                s = slicer.series(prob.v0, n, sk, threads);
            }
            emit(out_path, out_format == "csv" ? series_to_csv(s) : series_to_json(s));
            return 0;
        }
        if (mu_cmd->parsed()) {
            Problem prob = parse_problem(read_file(input));
            return run_mu(prob, variant, budget, chain, threads, lognormalize);
        }
        if (table_cmd->parsed()) return run_paper_table(chain, budget, threads);
        if (check_cmd->parsed()) return run_check(seed, threads);
    } catch (const ProblemParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const PolyParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NotLambdaFinite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const NotInert& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const UnsupportedCombination& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const NotStabilized& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotStabilized;
    } catch (const NotRational& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotStabilized;
    } catch (const GroebnerError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotStabilized;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
