#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "orlicz/conditions.hpp"
#include "orlicz/error.hpp"
#include "orlicz/experiment.hpp"
#include "orlicz/io.hpp"

using namespace orlicz;
using io::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

OrliczFunction load_phi(const std::string& path) { return io::orlicz_from_json(io::read_json_file(path)); }

int emit(const ExperimentResult& r, const std::string& key = {}) {
    std::cout << (key.empty() ? r.report : r.report.value(key, json())).dump(2) << '\n';
    return r.passed ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orlicz-space numerical toolkit"};
    app.require_subcommand(1);
    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "seed for random suites");

    std::string phi_path, f_path, g_path, op_path, step_path, config_path, which, alphas = "0.5:0.5:20",
                                                                            out_dir;
    double eps = 0.1;
    std::size_t pairs = 20, resolution = 64;

    auto* check = app.add_subcommand("check", "axioms, Delta_2, Delta_2+ and the zero class");
    check->add_option("orlicz", phi_path)->required()->check(CLI::ExistingFile);

    auto* construct = app.add_subcommand("construct", "Delta_2+ equivalent or violator");
    construct->add_option("which", which)->required()->check(CLI::IsMember({"equivalent", "violator"}));
    construct->add_option("orlicz", phi_path)->required()->check(CLI::ExistingFile);
    construct->add_option("--eps", eps, "relative perturbation for the violator");

    auto* norm = app.add_subcommand("norm", "Luxemburg norm of a step function");
    norm->add_option("orlicz", phi_path)->required()->check(CLI::ExistingFile);
    norm->add_option("step", step_path)->required()->check(CLI::ExistingFile);

    auto* curve = app.add_subcommand("curve", "N(alpha) = ||f + alpha g|| and its derivatives as CSV");
    curve->add_option("orlicz", phi_path)->required()->check(CLI::ExistingFile);
    curve->add_option("f", f_path)->required()->check(CLI::ExistingFile);
    curve->add_option("g", g_path)->required()->check(CLI::ExistingFile);
    curve->add_option("--alphas", alphas, "a0:ratio:count");

    auto* detect = app.add_subcommand("detect", "support detector for one pair");
    detect->add_option("orlicz", phi_path)->required()->check(CLI::ExistingFile);
    detect->add_option("f", f_path)->required()->check(CLI::ExistingFile);
    detect->add_option("g", g_path)->required()->check(CLI::ExistingFile);

    auto* isometry = app.add_subcommand("isometry", "isometry and disjointness preservation");
    isometry->add_option("orlicz", phi_path)->required()->check(CLI::ExistingFile);
    isometry->add_option("operator", op_path)->required()->check(CLI::ExistingFile);
    isometry->add_option("--pairs", pairs, "number of disjoint pairs");

    auto* recover = app.add_subcommand("recover", "recover a and sigma of a weighted composition");
    recover->add_option("orlicz", phi_path)->required()->check(CLI::ExistingFile);
    recover->add_option("operator", op_path)->required()->check(CLI::ExistingFile);
    recover->add_option("--resolution", resolution, "indicator basis size")->check(CLI::PositiveNumber);

    auto* run = app.add_subcommand("run", "run an experiment config");
    run->add_option("config", config_path)->required()->check(CLI::ExistingFile);

    for (CLI::App* sub : {construct, curve, detect, isometry})
        sub->add_option("--out", out_dir, "directory for report files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*check) {
            const ExperimentResult r = run_scenario(load_phi(phi_path), "condition-check", json::object(), seed, "");
            return emit(r, "checks");
        }
        if (*construct) {
            const ExperimentResult r =
                run_scenario(load_phi(phi_path), "construct", {{"which", which}, {"eps", eps}}, seed, out_dir);
            if (r.report.contains("construction")) std::cout << r.report.at("construction").dump(2) << '\n';
            std::cerr << r.report.value("verification", json()).dump(2) << '\n';
            if (r.report.contains("error")) std::cerr << "error: " << r.report.at("error").get<std::string>() << '\n';
            return r.passed ? kPass : kFail;
        }
        if (*norm) {
            const OrliczFunction phi = load_phi(phi_path);
            const StepFunction f = io::read_step_file(step_path);
            const double n = luxemburg_norm(f, phi);
            std::cout << json{{"luxemburg_norm", io::number(n)}, {"modular_at_norm", io::number(modular(f, n, phi))},
                              {"sup_norm", io::number(f.sup_norm())}}
                             .dump(2)
                      << '\n';
            return kPass;
        }
        if (*curve) {
            const json params{{"f", io::to_json(io::read_step_file(f_path))},
                              {"g", io::to_json(io::read_step_file(g_path))},
                              {"alphas", alphas}};
            const ExperimentResult r = run_scenario(load_phi(phi_path), "curve", params, seed, out_dir);
            if (r.outputs.count("curve.csv")) std::cout << r.outputs.at("curve.csv");
            std::cerr << r.report.value("summary", json()).dump() << '\n';
            if (r.report.contains("error")) std::cerr << "error: " << r.report.at("error").get<std::string>() << '\n';
            return r.passed ? kPass : kFail;
        }
        if (*detect) {
            const OrliczFunction phi = load_phi(phi_path);
            const ZeroClass zc = classify_second_derivative_at_zero(phi);
            if (zc == ZeroClass::zero)
                require_zero_regime(phi);
            else if (zc == ZeroClass::infinite)
                require_infinite_regime(phi);
            const DetectTrial t = detect_trial(io::read_step_file(f_path), io::read_step_file(g_path), phi);
            std::cout << json{{"verdict", io::to_json(t.verdict)},
                              {"support_relation", std::string(to_string(t.truth))},
                              {"conclusive", t.conclusive},
                              {"agrees", t.agrees}}
                             .dump(2)
                      << '\n';
            return t.agrees ? kPass : kFail;
        }
        if (*isometry) {
            const json params{{"operator", io::read_json_file(op_path)}, {"pairs", pairs}};
            return emit(run_scenario(load_phi(phi_path), "isometry", params, seed, out_dir));
        }
        if (*recover) {
            const OrliczFunction phi = load_phi(phi_path);
            const io::OperatorSpec spec = io::operator_from_json(io::read_json_file(op_path));
            const Recovery r = recover_weighted_composition(spec.op, resolution, phi, seed);
            std::cout << io::to_json(r).dump(2) << '\n';
            return r.residual <= 1e-10 ? kPass : kFail;
        }
        if (*run) {
            const ExperimentResult r = run_experiment_file(config_path);
            std::cout << json{{"passed", r.passed}, {"files", r.files}}.dump(2) << '\n';
            if (r.report.contains("error")) std::cerr << "error: " << r.report.at("error").get<std::string>() << '\n';
            return r.passed ? kPass : kFail;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFail;
    }
    return kUsage;
}
