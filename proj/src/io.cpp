#include "lenhil/io.hpp"

#include <json.hpp>

#include <sstream>

namespace lenhil {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json lv_json(const LengthValue& v) {
    ordered_json j;
    if (v.is_infinite()) {
        j["inf"] = true;
        return j;
    }
    j["unit"] = v.unit().get_str();
    ordered_json logs = ordered_json::object();
    for (const auto& [p, c] : v.logs()) logs[p.get_str()] = c.get_str();
    j["logs"] = logs;
    return j;
}

Rat rat_from_string(const std::string& s) {
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw ProblemParseError("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

LengthValue lv_from(const ordered_json& j) {
    if (j.contains("inf") && j["inf"].get<bool>()) return LengthValue::infinity();
    LengthValue v;
    if (j.contains("unit")) v += LengthValue::from_unit(rat_from_string(j["unit"].get<std::string>()));
    if (j.contains("logs"))
        for (auto it = j["logs"].begin(); it != j["logs"].end(); ++it)
            v += LengthValue::log_term(Int(it.key()), rat_from_string(it.value().get<std::string>()));
    return v;
}

std::string base_name(BaseKind b) {
    switch (b) {
        case BaseKind::Integers: return "Z";
        case BaseKind::IntegersModN: return "Zmod";
        case BaseKind::PrimeField: return "Fp";
        case BaseKind::Rationals: return "Q";
    }
    return "?";
}

std::string length_name(LengthKind k) {
    switch (k) {
        case LengthKind::Dimension: return "dim";
        case LengthKind::Rank: return "rank";
        case LengthKind::LogCard: return "logcard";
    }
    return "?";
}

}  // namespace

Problem parse_problem(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ProblemParseError(std::string("JSON parse error: ") + e.what());
    }
    try {
        Problem prob;
        const auto& ring = j.at("ring");
        std::string base = ring.at("base").get<std::string>();
        int k = ring.at("k").get<int>();
        RingSpec rs;
        if (base == "Z")
            rs = RingSpec::integers(k);
        else if (base == "Q")
            rs = RingSpec::rationals(k);
        else if (base == "Zmod")
            rs = RingSpec::integers_mod(Int(ring.at("n").get<long>()), k);
        else if (base == "Fp")
            rs = RingSpec::prime_field(Int(ring.at("n").get<long>()), k);
        else
            throw ProblemParseError("ring.base must be Z, Zmod, Fp or Q");
        if (ring.contains("weights")) {
            std::vector<int> w = ring.at("weights").get<std::vector<int>>();
            rs = rs.with_weights(std::move(w));
        }

        const auto& mod = j.at("module");
        Presentation p;
        p.ring = rs;
        p.gens = mod.at("gens").get<int>();
        if (mod.contains("gen_degrees"))
            p.gen_degrees = mod.at("gen_degrees").get<std::vector<int>>();
        if (mod.contains("relations"))
            for (const auto& rel : mod.at("relations")) {
                FreeVec v(p.gens, rs.k);
                if (static_cast<int>(rel.size()) != p.gens)
                    throw ProblemParseError("relation component count != gens");
                for (int i = 0; i < p.gens; ++i)
                    v.comps[i] = parse_poly(rel[i].get<std::string>(), rs.k);
                p.relations.push_back(std::move(v));
            }
        p = reduce_coefficients(std::move(p));
        p.validate();
        prob.module = p;

        if (j.contains("V0")) {
            const auto& v0 = j.at("V0");
            if (v0.is_object()) {
                if (v0.at("builtin").get<std::string>() != "Z_plus_nS")
                    throw ProblemParseError("unknown builtin V0");
                prob.v0 = SubmoduleGens::z_plus(Int(v0.at("n").get<long>()), rs.k);
            } else {
                std::vector<FreeVec> elems;
                for (const auto& el : v0) {
                    FreeVec v(p.gens, rs.k);
                    if (static_cast<int>(el.size()) != p.gens)
                        throw ProblemParseError("V0 element component count != gens");
                    for (int i = 0; i < p.gens; ++i)
                        v.comps[i] = parse_poly(el[i].get<std::string>(), rs.k);
                    elems.push_back(std::move(v));
                }
                prob.v0 = SubmoduleGens::of(std::move(elems));
            }
        } else {
            prob.v0 = SubmoduleGens::unit_generators(p);
        }

        std::string len = j.at("length").get<std::string>();
        if (len == "dim")
            prob.length.kind = LengthKind::Dimension;
        else if (len == "rank")
            prob.length.kind = LengthKind::Rank;
        else if (len == "logcard")
            prob.length.kind = LengthKind::LogCard;
        else
            throw ProblemParseError("length must be dim, rank or logcard");
        prob.length.validate(prob.module.ring);
        return prob;
    } catch (const ordered_json::exception& e) {
        throw ProblemParseError(std::string("problem file: ") + e.what());
    }
}

std::string emit_problem(const Problem& p) {
    ordered_json j;
    ordered_json ring;
    ring["base"] = base_name(p.module.ring.base);
    if (p.module.ring.base == BaseKind::IntegersModN || p.module.ring.base == BaseKind::PrimeField)
        ring["n"] = p.module.ring.n.get_si();
    ring["k"] = p.module.ring.k;
    ring["weights"] = p.module.ring.weights;
    j["ring"] = ring;

    ordered_json mod;
    mod["gens"] = p.module.gens;
    if (p.module.gen_degrees) mod["gen_degrees"] = *p.module.gen_degrees;
    ordered_json rels = ordered_json::array();
    for (const auto& r : p.module.relations) {
        ordered_json rel = ordered_json::array();
        for (const auto& c : r.comps) rel.push_back(c.str());
        rels.push_back(rel);
    }
    mod["relations"] = rels;
    j["module"] = mod;

    if (p.v0.is_builtin()) {
        j["V0"] = ordered_json{{"builtin", "Z_plus_nS"}, {"n", p.v0.z_plus_cS->get_si()}};
    } else {
        ordered_json v0 = ordered_json::array();
        for (const auto& el : p.v0.elements) {
            ordered_json e = ordered_json::array();
            for (const auto& c : el.comps) e.push_back(c.str());
            v0.push_back(e);
        }
        j["V0"] = v0;
    }
    j["length"] = length_name(p.length.kind);
    return j.dump(2) + "\n";
}

std::string length_value_json(const LengthValue& v) { return lv_json(v).dump(); }

LengthValue length_value_from_json(const std::string& text) {
    return lv_from(ordered_json::parse(text));
}

std::string series_to_json(const GrowthSeries& s) {
    ordered_json j;
    j["kind"] = series_kind_name(s.kind);
    j["length"] = length_name(s.spec.kind);
    j["weights"] = s.weights;
    if (s.kind == SeriesKind::MultiBox) {
        j["partition"] = s.partition;
        j["box"] = s.box;
    }
    ordered_json vals = ordered_json::array();
    for (const auto& v : s.values) vals.push_back(lv_json(v));
    j["values"] = vals;
    j["source"] = s.source;
    return j.dump(2) + "\n";
}

std::string series_to_csv(const GrowthSeries& s) {
    std::ostringstream os;
    if (s.kind == SeriesKind::MultiBox) {
        for (size_t jb = 0; jb < s.box.size(); ++jb) os << "m" << (jb + 1) << ",";
        os << "value\n";
        std::vector<long> m(s.box.size(), 0);
        for (size_t flat = 0; flat < s.values.size(); ++flat) {
            long rest = static_cast<long>(flat);
            for (size_t jb = s.box.size(); jb-- > 0;) {
                m[jb] = rest % (s.box[jb] + 1);
                rest /= (s.box[jb] + 1);
            }
            for (long x : m) os << x << ",";
            os << s.values[flat].str() << "\n";
        }
        return os.str();
    }
    os << "n,value\n";
    for (size_t n = 0; n < s.values.size(); ++n) os << n << "," << s.values[n].str() << "\n";
    return os.str();
}

std::string mu_monomial_json(const MuMonomial& m) {
    ordered_json j;
    if (m.is_zero()) {
        j["zero"] = true;
    } else {
        j["degree"] = m.degree();
        j["coeff"] = lv_json(m.coeff());
    }
    return j.dump();
}

namespace {

ordered_json loglin_json(const LogLin& l) {
    ordered_json j = ordered_json::object();
    for (const auto& [p, c] : l) j[p == 0 ? "unit" : "log " + p.get_str()] = c.get_str();
    return j;
}

std::string exponent_key(const std::vector<int>& e) {
    std::string s;
    for (size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e[i]);
    }
    return s;
}

}  // namespace

std::string eventual_polynomial_json(const EventualPolynomial& q) {
    ordered_json j;
    j["nvars"] = q.nvars;
    j["stable_from"] = q.stable_from;
    j["per_var_bounds"] = q.per_var_bounds;
    ordered_json coeffs = ordered_json::object();
    for (const auto& [e, c] : q.coeffs) coeffs[exponent_key(e)] = loglin_json(c);
    j["coeffs"] = coeffs;
    j["text"] = q.str();
    return j.dump(2) + "\n";
}

std::string hat_estimate_json(const HatEstimate& est) {
    ordered_json j;
    ordered_json chain = ordered_json::array();
    for (size_t i = 0; i < est.chain.size(); ++i) {
        ordered_json link;
        link["modulus"] = est.chain[i].modulus.get_str();
        link["mu"] = ordered_json::parse(mu_monomial_json(est.chain[i].mu));
        link["running_sup"] = ordered_json::parse(mu_monomial_json(est.running_sup[i]));
        chain.push_back(link);
    }
    j["chain"] = chain;
    j["sup"] = ordered_json::parse(mu_monomial_json(est.sup));
    j["verdict"] = verdict_name(est.verdict);
    return j.dump(2) + "\n";
}

}  // namespace lenhil
