#include "orlicz/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>

#include "orlicz/conditions.hpp"
#include "orlicz/constructions.hpp"
#include "orlicz/error.hpp"
#include "orlicz/generators.hpp"

namespace orlicz {
namespace fs = std::filesystem;
using io::json;

namespace {

struct Context {
    fs::path base;
    fs::path out;
    std::uint64_t seed = 1;
    json params = json::object();
    std::vector<std::string> files;
    std::map<std::string, std::string> outputs;

    std::string resolve(const std::string& p) const {
        const fs::path q(p);
        return (q.is_absolute() ? q : base / q).string();
    }
    void write(const std::string& name, const std::string& content) {
        outputs[name] = content;
        if (out.empty()) return;
        fs::create_directories(out);
        const std::string path = (out / name).string();
        io::write_text_file(path, content);
        files.push_back(path);
    }
    double num(const char* key, double fallback) const {
        return params.contains(key) ? io::to_double(params.at(key)) : fallback;
    }
    std::size_t count(const char* key, std::size_t fallback) const {
        return params.contains(key) ? params.at(key).get<std::size_t>() : fallback;
    }
};

OrliczFunction load_orlicz(const json& config, const Context& ctx) {
    if (config.contains("orlicz")) return io::orlicz_from_json(config.at("orlicz"));
    if (config.contains("orlicz_file"))
        return io::orlicz_from_json(io::read_json_file(ctx.resolve(config.at("orlicz_file").get<std::string>())));
    throw ParseError("config needs \"orlicz\" or \"orlicz_file\"");
}

StepFunction load_step(const Context& ctx, const std::string& key) {
    if (ctx.params.contains(key)) return io::step_from_json(ctx.params.at(key));
    const std::string fkey = key + "_file";
    if (ctx.params.contains(fkey)) return io::read_step_file(ctx.resolve(ctx.params.at(fkey).get<std::string>()));
    throw ParseError("params need \"" + key + "\" or \"" + fkey + "\"");
}

bool expectations_hold(const json& expect, const json& checks, json& mismatches) {
    bool ok = true;
    for (auto it = expect.begin(); it != expect.end(); ++it) {
        if (!checks.contains(it.key())) throw ParseError("unknown expectation '" + it.key() + "'");
        const json& got = checks.at(it.key()).contains("passed") ? checks.at(it.key()).at("passed")
                                                                  : checks.at(it.key());
        if (got != it.value()) {
            ok = false;
            mismatches.push_back({{"check", it.key()}, {"expected", it.value()}, {"got", got}});
        }
    }
    return ok;
}

bool scenario_condition_check(const OrliczFunction& phi, Context& ctx, json& rep) {
    const double u0 = ctx.num("u0", kDefaultU0);
    json checks;
    const ConditionReport ax = check_axioms(phi);
    checks["axioms"] = io::to_json(ax);
    checks["delta2"] = io::to_json(check_delta2(phi, u0));
    checks["delta2plus"] = io::to_json(check_delta2plus(phi, u0));
    checks["zero_class_observed"] = std::string(to_string(observe_zero_class(phi)));
    if (auto z = phi.declared_zero_class()) checks["zero_class_declared"] = std::string(to_string(*z));
    rep["checks"] = checks;
    bool ok = ax.passed;
    if (ctx.params.contains("expect")) {
        json mismatches = json::array();
        ok = expectations_hold(ctx.params.at("expect"), checks, mismatches) && ok;
        rep["expectation_mismatches"] = mismatches;
    }
    return ok;
}

bool scenario_construct(const OrliczFunction& phi, Context& ctx, json& rep) {
    const std::string which = ctx.params.value("which", std::string("equivalent"));
    const GeometricGrid grid{std::max(kDefaultU0, 1e-6), std::min(kDefaultGridTop, phi.u_max()), 512};
    bool ok = true;
    json verify;
    if (which == "equivalent") {
        const OrliczFunction m1 = build_delta2plus_equivalent(phi);
        const ConditionReport d2 = check_delta2(phi);
        const double l = 4.0 * d2.witness_sup;
        const ConditionReport eq = verify_equivalence(m1, phi, 0.5, l, grid);
        const ConditionReport d2p = check_delta2plus(m1);
        double agree = 0.0;
        for (double u = 0.0; u <= 2.0; u += 1.0 / 64) agree = std::max(agree, std::fabs(m1(u) - phi(u)));
        verify["equivalence"] = io::to_json(eq);
        verify["equivalence_constants"] = {{"k", 0.5}, {"l", l}};
        verify["delta2plus"] = io::to_json(d2p);
        verify["max_deviation_on_0_2"] = io::number(agree);
        ok = eq.passed && d2p.passed && agree == 0.0;
        rep["construction"] = io::to_json(m1);
        ctx.write("construction.json", io::to_json(m1).dump(2));
    } else if (which == "violator") {
        const double eps = ctx.num("eps", 0.1);
        const OrliczFunction m1 = build_delta2plus_violator(phi, eps);
        double dev = 0.0;
        for (double u : GeometricGrid{1e-6, std::min(kDefaultGridTop, phi.u_max()), 256}.points())
            dev = std::max(dev, std::fabs(m1(u) / phi(u) - 1.0));
        const int n1 = static_cast<int>(m1.param("n1"));
        const double c = n1 + 0.5;
        const double ratio = c * m1.second_derivative(c) / m1.derivative(c);
        verify["max_relative_deviation"] = io::number(dev);
        verify["probe"] = {{"u", c}, {"ratio", io::number(ratio)}, {"threshold", std::ldexp(1.0, n1)}};
        ok = dev <= eps && ratio > std::ldexp(1.0, n1);
        rep["construction"] = io::to_json(m1);
        ctx.write("construction.json", io::to_json(m1).dump(2));
    } else {
        throw ParseError("params.which must be 'equivalent' or 'violator'");
    }
    rep["verification"] = verify;
    return ok;
}

std::vector<double> alphas_from(const Context& ctx) {
    if (!ctx.params.contains("alphas")) return io::parse_alpha_spec("0.5:0.5:20");
    const json& a = ctx.params.at("alphas");
    if (a.is_string()) return io::parse_alpha_spec(a.get<std::string>());
    std::vector<double> out;
    for (const json& x : a) out.push_back(io::to_double(x));
    return out;
}

bool scenario_curve(const OrliczFunction& phi, Context& ctx, json& rep) {
    const StepFunction f = normalized(load_step(ctx, "f"), phi);
    const StepFunction g = normalized(load_step(ctx, "g"), phi);
    const ModularSurface S(f, g, phi);
    std::vector<double> excluded;
    const std::vector<NormCurveSample> samples = sweep(S, alphas_from(ctx), true, &excluded);

    double worst_attain = 0.0, worst_implicit = 0.0, worst_fd = 0.0;
    bool eta_negative = true;
    for (const NormCurveSample& s : samples) {
        const double h = modular(S.combination(s.alpha), s.N, phi);
        worst_attain = std::max(worst_attain, std::fabs(h - 1.0));
        worst_implicit = std::max(worst_implicit, std::fabs(s.partials.F_alpha + s.partials.F_eta * s.Nprime));
        worst_fd = std::max(worst_fd, s.fd.max());
        eta_negative = eta_negative && s.partials.F_eta < 0.0;
    }
    json samples_json = json::array();
    for (const NormCurveSample& s : samples) samples_json.push_back(io::to_json(s));
    rep["samples"] = samples_json;
    rep["excluded"] = excluded;
    rep["summary"] = {{"count", samples.size()},
                      {"max_modular_defect", io::number(worst_attain)},
                      {"max_implicit_residual", io::number(worst_implicit)},
                      {"max_fd_residual", io::number(worst_fd)},
                      {"F_eta_negative", eta_negative}};
    ctx.write("curve.csv", io::curve_csv(samples));
    return !samples.empty() && eta_negative && worst_attain <= 1e-9 && worst_implicit <= 1e-8;
}

bool scenario_detect(const OrliczFunction& phi, Context& ctx, json& rep) {
    const ZeroClass zc = classify_second_derivative_at_zero(phi);
    std::vector<gen::SupportPattern> patterns;
    if (zc == ZeroClass::zero) {
        require_zero_regime(phi);
        patterns = {gen::SupportPattern::disjoint, gen::SupportPattern::proper_overlap};
    } else if (zc == ZeroClass::infinite) {
        require_infinite_regime(phi);
        patterns = {gen::SupportPattern::g_exceeds_f, gen::SupportPattern::g_within_f,
                    gen::SupportPattern::equal};
    } else {
        throw PreconditionError("detector needs M''(0) = 0 or infinity, got " +
                                std::string(to_string(zc)));
    }
    const std::size_t n = ctx.count("pairs", 50);
    const std::size_t cells = ctx.count("cells", 16);
    gen::Rng rng(ctx.seed);
    std::size_t conclusive = 0, agree = 0, asymmetric = 0;
    json trials = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        const auto [f, g] = gen::random_pair(rng, patterns[i % patterns.size()], cells);
        const DetectTrial t = detect_trial(f, g, phi);
        conclusive += t.conclusive;
        agree += t.agrees;
        if (t.verdict.directions.size() == 2 &&
            t.verdict.directions[0].claim != t.verdict.directions[1].claim)
            ++asymmetric;
        trials.push_back({{"truth", std::string(to_string(t.truth))},
                          {"claim", std::string(to_string(t.verdict.claim))},
                          {"agrees", t.agrees}});
    }
    const double inconclusive_rate = n ? static_cast<double>(n - conclusive) / n : 0.0;
    rep["trials"] = trials;
    rep["summary"] = {{"pairs", n},
                      {"conclusive", conclusive},
                      {"agreements", agree},
                      {"agreement_rate", conclusive ? static_cast<double>(agree) / conclusive : 0.0},
                      {"inconclusive_rate", inconclusive_rate},
                      {"asymmetric_pairs", asymmetric}};
    return n > 0 && agree == conclusive && inconclusive_rate <= 0.05;
}

bool scenario_isometry(const OrliczFunction& phi, Context& ctx, json& rep) {
    json opj;
    if (ctx.params.contains("operator"))
        opj = ctx.params.at("operator");
    else if (ctx.params.contains("operator_file"))
        opj = io::read_json_file(ctx.resolve(ctx.params.at("operator_file").get<std::string>()));
    else
        throw ParseError("params need \"operator\" or \"operator_file\"");
    const io::OperatorSpec spec = io::operator_from_json(opj);
    const bool expect = ctx.params.value("expect_isometry", true);

    gen::Rng rng(ctx.seed);
    std::vector<StepFunction> testset;
    for (std::size_t i = 0; i < ctx.count("testset", 20); ++i) testset.push_back(gen::random_step(rng));
    IsometryOptions opts;
    opts.seed = ctx.seed;
    const IsometryReport iso = check_isometry(spec.op, phi, testset, opts);
    rep["isometry"] = io::to_json(iso);
    if (!iso.is_isometry) return !expect;
    if (!expect) return false;

    std::vector<std::pair<StepFunction, StepFunction>> pairs;
    for (std::size_t i = 0; i < ctx.count("pairs", 20); ++i)
        pairs.push_back(gen::random_pair(rng, gen::SupportPattern::disjoint));
    const IsometryReport dis = check_disjointness_preservation(spec.op, phi, pairs, opts);
    rep["disjointness"] = io::to_json(dis);
    bool ok = dis.preservation_failures.empty() && dis.detector_disagreements == 0;

    if (ctx.params.contains("resolution")) {
        const Recovery r = recover_weighted_composition(spec.op, ctx.count("resolution", 64), phi, ctx.seed);
        rep["recovery"] = io::to_json(r);
        ok = ok && r.residual <= 1e-10;
    }
    return ok;
}

}  // namespace

DetectTrial detect_trial(const StepFunction& f, const StepFunction& g, const OrliczFunction& phi,
                         const DetectorOptions& opts) {
    DetectTrial t;
    const SupportRelation rel = support_relation(f, g);
    t.truth = rel.relation;
    const StepFunction nf = normalized(f, phi), ng = normalized(g, phi);
    const ZeroClass zc = phi.declared_zero_class() ? *phi.declared_zero_class() : observe_zero_class(phi);
    if (zc == ZeroClass::zero) {
        t.verdict = unchecked::disjointness_zero_case(nf, ng, phi, opts);
        const Claim want = rel.relation == Relation::disjoint ? Claim::disjoint : Claim::not_disjoint;
        t.conclusive = t.verdict.claim != Claim::inconclusive;
        t.agrees = t.verdict.claim == want;
    } else if (zc == ZeroClass::infinite) {
        t.verdict = unchecked::support_equality(nf, ng, phi, opts);
        const Claim want = rel.relation == Relation::equal ? Claim::supports_equal : Claim::supports_differ;
        t.conclusive = t.verdict.claim != Claim::inconclusive;
        t.agrees = t.verdict.claim == want;
        if (t.agrees) {
            const Claim d0 = rel.mu_g_minus_f > kSupportFloor ? Claim::g_support_exceeds_f
                                                              : Claim::g_support_within_f;
            const Claim d1 = rel.mu_f_minus_g > kSupportFloor ? Claim::g_support_exceeds_f
                                                              : Claim::g_support_within_f;
            t.agrees = t.verdict.directions[0].claim == d0 && t.verdict.directions[1].claim == d1;
        }
    } else {
        throw PreconditionError("detector needs M''(0) = 0 or infinity");
    }
    return t;
}

ExperimentResult run_scenario(const OrliczFunction& phi, const std::string& scenario,
                              const json& params, std::uint64_t seed, const std::string& output_dir,
                              const std::string& base_dir) {
    Context ctx;
    ctx.base = base_dir;
    if (!output_dir.empty()) ctx.out = ctx.resolve(output_dir);
    ctx.seed = seed;
    ctx.params = params.is_null() ? json::object() : params;
    if (!ctx.params.is_object()) throw ParseError("\"params\" must be an object");

    json rep{{"scenario", scenario}, {"orlicz", io::to_json(phi)}, {"seed", seed}};
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        if (scenario == "condition-check")
            ok = scenario_condition_check(phi, ctx, rep);
        else if (scenario == "construct")
            ok = scenario_construct(phi, ctx, rep);
        else if (scenario == "curve")
            ok = scenario_curve(phi, ctx, rep);
        else if (scenario == "detect")
            ok = scenario_detect(phi, ctx, rep);
        else if (scenario == "isometry")
            ok = scenario_isometry(phi, ctx, rep);
        else
            throw ParseError("unknown scenario '" + scenario + "'");
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed params: ") + e.what());
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        rep["error"] = e.what();
        ok = false;
    }
    rep["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep["passed"] = ok;
    ctx.write("report.json", rep.dump(2));
    return {ok, rep, ctx.files, ctx.outputs};
}

ExperimentResult run_experiment(const json& config, const std::string& base_dir) {
    if (!config.is_object()) throw ParseError("config must be a JSON object");
    if (!config.contains("scenario")) throw ParseError("config needs \"scenario\"");
    try {
        Context ctx;
        ctx.base = base_dir;
        const OrliczFunction phi = load_orlicz(config, ctx);
        return run_scenario(phi, config.at("scenario").get<std::string>(),
                            config.value("params", json::object()),
                            config.value("seed", std::uint64_t{1}),
                            config.value("output_dir", std::string("out")), base_dir);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed config: ") + e.what());
    }
}

ExperimentResult run_experiment_file(const std::string& path) {
    const json config = io::read_json_file(path);
    return run_experiment(config, fs::path(path).parent_path().string().empty()
                                      ? std::string(".")
                                      : fs::path(path).parent_path().string());
}

}  // namespace orlicz
