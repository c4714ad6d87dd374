#pragma once
// Text serialization shared by the CLI: round-trip decimal formatting and
// JSON mappings for the result records.

#include <string>

#include <json.hpp>

#include "fracdt/fude.hpp"
#include "fracdt/quadrature.hpp"
#include "fracdt/riemann_probe.hpp"

namespace fracdt {

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

Verdict verdict_from_string(const std::string& s);

void to_json(nlohmann::json& j, const QuadratureResult& r);
void from_json(const nlohmann::json& j, QuadratureResult& r);

void to_json(nlohmann::json& j, const DivergenceReport& r);
void from_json(const nlohmann::json& j, DivergenceReport& r);

void to_json(nlohmann::json& j, const PicardTrace& r);
void from_json(const nlohmann::json& j, PicardTrace& r);

void to_json(nlohmann::json& j, const GapCheck& r);
void from_json(const nlohmann::json& j, GapCheck& r);

void to_json(nlohmann::json& j, const IdentityCheck& r);
void from_json(const nlohmann::json& j, IdentityCheck& r);

}  // namespace fracdt
