#include "orlicz/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "orlicz/constructions.hpp"
#include "orlicz/error.hpp"

namespace orlicz::io {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

json params_json(const Params& p) {
    json j = json::object();
    for (const auto& [k, v] : p) j[k] = number(v);
    return j;
}

Params params_from(const json& j) {
    Params p;
    if (!j.is_object()) throw ParseError("\"params\" must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) p[it.key()] = to_double(it.value());
    return p;
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::vector<double> doubles(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
    std::vector<double> out;
    for (const json& x : j) out.push_back(to_double(x));
    return out;
}

OrliczFunction apply_overrides(OrliczFunction phi, const json& j) {
    if (j.contains("u_max")) phi = phi.with_u_max(to_double(j.at("u_max")));
    if (j.contains("zero_class")) {
        const json& z = j.at("zero_class");
        if (z.is_null())
            phi = phi.with_zero_class(std::nullopt);
        else
            phi = phi.with_zero_class(zero_class_from_string(z.get<std::string>()));
    }
    return phi;
}

}  // namespace

json parse(std::string_view text, const std::string& origin) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::ostringstream os;
        os << origin << ':' << line << ':' << col << ": " << e.what();
        throw ParseError(os.str());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json read_json_file(const std::string& path) { return parse(read_text_file(path), path); }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

json number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

double to_double(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw ParseError("expected a number, got " + j.dump());
}

json to_json(const OrliczFunction& phi) {
    json j;
    j["kind"] = std::string(to_string(phi.kind()));
    j["params"] = params_json(phi.params());
    j["u_max"] = number(phi.u_max());
    if (auto z = phi.declared_zero_class())
        j["zero_class"] = std::string(to_string(*z));
    else
        j["zero_class"] = nullptr;
    if (const PiecewiseOrlicz* pw = as_piecewise(phi)) {
        j["construction"] = pw->construction();
        j["knots"] = pw->knots();
        json segs = json::array();
        for (const Segment& s : pw->segments()) {
            json js{{"rule", std::string(to_string(s.rule))}};
            if (s.rule != Segment::Rule::source) js["coeffs"] = s.c;
            segs.push_back(js);
        }
        j["segments"] = segs;
        j["source"] = to_json(pw->source());
        j["probe_points"] = pw->probe_points();
        j["integral_cache"] = pw->integral_cache();
    } else if (const OrliczFunction* src = complementary_source(phi)) {
        j["source"] = to_json(*src);
    }
    return j;
}

OrliczFunction orlicz_from_json(const json& j) {
    try {
        const Kind kind = kind_from_string(field(j, "kind").get<std::string>());
        const Params params = j.contains("params") ? params_from(j.at("params")) : Params{};
        const auto p_of = [&]() {
            auto it = params.find("p");
            if (it == params.end()) throw ParseError("power kinds need params.p");
            return it->second;
        };
        switch (kind) {
            case Kind::power: return apply_overrides(power(p_of()), j);
            case Kind::power_log: return apply_overrides(power_log(p_of()), j);
            case Kind::exp_type: return apply_overrides(exp_type(), j);
            case Kind::piecewise_hermite: {
                const OrliczFunction src = orlicz_from_json(field(j, "source"));
                std::vector<double> knots = doubles(field(j, "knots"), "knots");
                std::vector<Segment> segs;
                for (const json& s : field(j, "segments")) {
                    Segment seg;
                    seg.rule = segment_rule_from_string(field(s, "rule").get<std::string>());
                    if (seg.rule != Segment::Rule::source) {
                        const std::vector<double> c = doubles(field(s, "coeffs"), "coeffs");
                        if (c.size() > 4) throw ParseError("at most four coefficients per segment");
                        for (std::size_t i = 0; i < c.size(); ++i) seg.c[i] = c[i];
                    }
                    segs.push_back(seg);
                }
                std::vector<double> probes;
                if (j.contains("probe_points")) probes = doubles(j.at("probe_points"), "probe_points");
                const std::string construction =
                    j.contains("construction") ? j.at("construction").get<std::string>() : "custom";
                return apply_overrides(make_piecewise(std::move(knots), std::move(segs), src,
                                                      construction, std::move(probes), params),
                                       j);
            }
            case Kind::complementary: {
                const OrliczFunction src = orlicz_from_json(field(j, "source"));
                return apply_overrides(complementary(src), j);
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed Orlicz function: ") + e.what());
    }
    throw ParseError("unsupported Orlicz kind");
}

json to_json(const ConditionReport& r) {
    return json{{"condition", std::string(to_string(r.condition))},
                {"passed", r.passed},
                {"witness_sup", number(r.witness_sup)},
                {"witness_arg", number(r.witness_arg)},
                {"bound", number(r.bound)},
                {"u0_used", number(r.u0_used)},
                {"grid_spec",
                 {{"lo", number(r.grid.lo)}, {"hi", number(r.grid.hi)}, {"per_octave", r.grid.per_octave}}},
                {"min_ratio", number(r.min_ratio)},
                {"min_arg", number(r.min_arg)},
                {"points_tested", r.points_tested},
                {"points_skipped", r.points_skipped},
                {"probes_tested", r.probes_tested},
                {"failures", r.failures},
                {"notes", r.notes}};
}

json to_json(const StepFunction& f) {
    return json{{"breakpoints", f.breakpoints()}, {"values", f.values()}};
}

StepFunction step_from_json(const json& j) {
    try {
        return StepFunction(doubles(field(j, "breakpoints"), "breakpoints"),
                            doubles(field(j, "values"), "values"));
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("invalid step function: ") + e.what());
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed step function: ") + e.what());
    }
}

std::string step_to_csv(const StepFunction& f) {
    std::ostringstream os;
    os.precision(17);
    os << "breakpoint,value\n";
    for (std::size_t i = 0; i < f.cells(); ++i) os << f.breakpoints()[i] << ',' << f.values()[i] << '\n';
    os << 1.0 << ',' << f.values().back() << '\n';
    return os.str();
}

StepFunction step_from_csv(std::string_view text) {
    std::vector<double> t, v;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("csv line " + std::to_string(lineno) + ": expected 'breakpoint,value'");
        try {
            std::size_t used = 0;
            const std::string a = trim(line.substr(0, comma)), b = trim(line.substr(comma + 1));
            const double x = std::stod(a, &used);
            if (used != a.size()) throw std::invalid_argument(a);
            const double y = std::stod(b, &used);
            if (used != b.size()) throw std::invalid_argument(b);
            t.push_back(x);
            v.push_back(y);
        } catch (const std::logic_error&) {
            if (t.empty() && !header_seen) {
                header_seen = true;
                continue;
            }
            throw ParseError("csv line " + std::to_string(lineno) + ": not a number pair");
        }
    }
    if (t.size() < 2) throw ParseError("csv step function needs at least two rows");
    v.pop_back();
    try {
        return StepFunction(std::move(t), std::move(v));
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("invalid step function: ") + e.what());
    }
}

StepFunction read_step_file(const std::string& path) {
    const std::string text = read_text_file(path);
    const std::string t = trim(text);
    if (!t.empty() && t[0] == '{') return step_from_json(parse(text, path));
    return step_from_csv(text);
}

json to_json(const SupportRelation& r) {
    return json{{"relation", std::string(to_string(r.relation))},
                {"mu_f_minus_g", r.mu_f_minus_g},
                {"mu_g_minus_f", r.mu_g_minus_f},
                {"mu_intersection", r.mu_intersection}};
}

json to_json(const Partials& p) {
    return json{{"F_alpha", number(p.F_alpha)},         {"F_alphaalpha", number(p.F_alphaalpha)},
                {"F_eta", number(p.F_eta)},             {"F_alphaeta", number(p.F_alphaeta)},
                {"F_etaeta", number(p.F_etaeta)}};
}

json to_json(const FdResiduals& r) {
    return json{{"F_alpha", number(r.F_alpha)},   {"F_alphaalpha", number(r.F_alphaalpha)},
                {"F_eta", number(r.F_eta)},       {"F_alphaeta", number(r.F_alphaeta)},
                {"F_etaeta", number(r.F_etaeta)}, {"Nprime", number(r.Nprime)},
                {"Nsecond", number(r.Nsecond)},   {"max", number(r.max())}};
}

json to_json(const NormCurveSample& s) {
    json j{{"alpha", number(s.alpha)},
           {"N", number(s.N)},
           {"Nprime", number(s.Nprime)},
           {"Nsecond", number(s.Nsecond)},
           {"partials", to_json(s.partials)}};
    if (s.fd_checked) j["fd_residuals"] = to_json(s.fd);
    return j;
}

json to_json(const LimitClass& c) {
    json ev = json::array();
    for (const auto& [a, v] : c.evidence) ev.push_back({number(a), number(v)});
    return json{{"tag", std::string(to_string(c.tag))}, {"evidence", ev}};
}

json to_json(const Verdict& v) {
    json j{{"test", v.test},
           {"claim", std::string(to_string(v.claim))},
           {"limit_class", to_json(v.limit_class)},
           {"nprime0", number(v.nprime0)},
           {"excluded", v.excluded}};
    if (!v.directions.empty()) {
        json d = json::array();
        for (const Verdict& x : v.directions) d.push_back(to_json(x));
        j["directions"] = d;
    }
    return j;
}

json to_json(const IsometryReport& r) {
    json failures = json::array();
    for (const auto& f : r.preservation_failures)
        failures.push_back({{"pair", f.pair_index}, {"reason", f.reason}});
    return json{{"max_norm_deviation", number(r.max_norm_deviation)},
                {"worst_index", r.worst_index},
                {"testset_size", r.testset_size},
                {"is_isometry", r.is_isometry},
                {"pairs_checked", r.pairs_checked},
                {"preservation_failures", failures},
                {"detector",
                 {{"checked", r.detector_checked},
                  {"agreements", r.detector_agreements},
                  {"inconclusive", r.detector_inconclusive},
                  {"disagreements", r.detector_disagreements}}},
                {"notes", r.notes}};
}

json to_json(const WeightedComposition& T) {
    json j{{"type", "weighted_composition"},
           {"cells", T.source_cells},
           {"sigma", T.sigma},
           {"weight", to_json(T.weight)}};
    if (T.target != uniform_breakpoints(T.sigma.size())) j["target"] = T.target;
    return j;
}

json to_json(const Recovery& r) {
    json sigma = json::array();
    for (std::size_t s : r.sigma) {
        if (s == kUncovered)
            sigma.push_back(nullptr);
        else
            sigma.push_back(s);
    }
    json j{{"resolution", r.resolution},
           {"breakpoints", r.breakpoints},
           {"sigma", sigma},
           {"a", to_json(r.a)},
           {"residual", number(r.residual)},
           {"unimodular", r.unimodular},
           {"geometric_lattice", r.geometric_lattice},
           {"lattice_A", number(r.lattice_A)},
           {"lattice_gamma", number(r.lattice_gamma)}};
    if (r.power_like_near_zero) {
        j["power_like_near_zero"] = *r.power_like_near_zero;
        j["power_exponent"] = number(r.power_exponent);
    }
    return j;
}

std::string curve_csv(const std::vector<NormCurveSample>& samples) {
    std::ostringstream os;
    os.precision(17);
    os << "alpha,N,Nprime,Nsecond,F_eta,residual_max\n";
    for (const NormCurveSample& s : samples) {
        os << s.alpha << ',' << s.N << ',' << s.Nprime << ',' << s.Nsecond << ',' << s.partials.F_eta
           << ',';
        if (s.fd_checked) os << s.fd.max();
        os << '\n';
    }
    return os.str();
}

OperatorSpec operator_from_json(const json& j) {
    try {
        OperatorSpec spec;
        spec.type = field(j, "type").get<std::string>();
        if (spec.type == "weighted_composition") {
            WeightedComposition T;
            const json& sig = field(j, "sigma");
            if (!sig.is_array()) throw ParseError("sigma must be an array");
            for (const json& s : sig) T.sigma.push_back(s.get<std::size_t>());
            T.source_cells = j.contains("cells") ? j.at("cells").get<std::size_t>() : T.sigma.size();
            T.target = j.contains("target") ? doubles(j.at("target"), "target")
                                            : uniform_breakpoints(T.sigma.size());
            T.weight = j.contains("weight") ? step_from_json(j.at("weight")) : StepFunction::constant(1.0);
            try {
                T.validate();
            } catch (const PreconditionError& e) {
                throw ParseError(std::string("invalid weighted composition: ") + e.what());
            }
            spec.op = T.as_operator();
            spec.composition = std::move(T);
        } else if (spec.type == "rotation") {
            spec.op = rotation_operator(to_double(field(j, "angle")));
        } else if (spec.type == "perturbed_identity") {
            spec.op = perturbed_identity();
        } else {
            throw ParseError("unknown operator type '" + spec.type + "'");
        }
        return spec;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed operator: ") + e.what());
    }
}

std::vector<double> parse_alpha_spec(std::string_view spec) {
    const std::string s(spec);
    const auto c1 = s.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : s.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ParseError("alphas must look like a0:ratio:count");
    try {
        const double a0 = std::stod(s.substr(0, c1));
        const double ratio = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
        const long count = std::stol(s.substr(c2 + 1));
        if (count <= 0 || count > 100000) throw ParseError("alpha count out of range");
        std::vector<double> out;
        double a = a0;
        for (long i = 0; i < count; ++i, a *= ratio) out.push_back(a);
        return out;
    } catch (const std::logic_error&) {
        throw ParseError("alphas must look like a0:ratio:count");
    }
}

}  // namespace orlicz::io
