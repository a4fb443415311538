#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "orlicz/conditions.hpp"
#include "orlicz/detector.hpp"
#include "orlicz/differential.hpp"
#include "orlicz/function_space.hpp"
#include "orlicz/isometry.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/step_function.hpp"

namespace orlicz::io {

using json = nlohmann::json;

/// Parses text; syntax errors become ParseError with line and column.
json parse(std::string_view text, const std::string& origin = "<input>");
json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Finite numbers as numbers, the rest as "inf", "-inf" or "nan".
json number(double x);
double to_double(const json& j);

json to_json(const OrliczFunction& phi);
OrliczFunction orlicz_from_json(const json& j);

json to_json(const ConditionReport& r);
json to_json(const StepFunction& f);
StepFunction step_from_json(const json& j);

/// Rows "breakpoint,value"; the final row carries breakpoint 1 and repeats the last value.
std::string step_to_csv(const StepFunction& f);
StepFunction step_from_csv(std::string_view text);
/// JSON or CSV, chosen from the file content.
StepFunction read_step_file(const std::string& path);

json to_json(const SupportRelation& r);
json to_json(const Partials& p);
json to_json(const FdResiduals& r);
json to_json(const NormCurveSample& s);
json to_json(const LimitClass& c);
json to_json(const Verdict& v);
json to_json(const IsometryReport& r);
json to_json(const WeightedComposition& T);
json to_json(const Recovery& r);

/// CSV with columns alpha,N,Nprime,Nsecond,F_eta,residual_max.
std::string curve_csv(const std::vector<NormCurveSample>& samples);

struct OperatorSpec {
    std::string type;
    Operator op;
    std::optional<WeightedComposition> composition;
};

/// {"type": "weighted_composition", "cells": n, "sigma": [...], "weight": step}
/// {"type": "rotation", "angle": x}
/// {"type": "perturbed_identity"}
OperatorSpec operator_from_json(const json& j);

/// "a0:ratio:count" -> a0, a0 ratio, ..., count values.
std::vector<double> parse_alpha_spec(std::string_view spec);

}  // namespace orlicz::io
