#include "fracdt/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace fracdt {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "diverges") return Verdict::diverges;
    if (s == "converges") return Verdict::converges;
    if (s == "inconclusive") return Verdict::inconclusive;
    throw std::invalid_argument("unknown verdict: " + s);
}

void to_json(nlohmann::json& j, const QuadratureResult& r) {
    j = {{"value", r.value}, {"error_estimate", r.error_estimate}, {"evals", r.evals}, {"converged", r.converged}};
}

void from_json(const nlohmann::json& j, QuadratureResult& r) {
    j.at("value").get_to(r.value);
    j.at("error_estimate").get_to(r.error_estimate);
    j.at("evals").get_to(r.evals);
    j.at("converged").get_to(r.converged);
}

void to_json(nlohmann::json& j, const DivergenceReport& r) {
    j = {{"ns", r.ns},
         {"sums", r.sums},
         {"fitted_exponent", r.fitted_exponent},
         {"fitted_r2", r.fitted_r2},
         {"verdict", std::string(to_string(r.verdict))}};
}

void from_json(const nlohmann::json& j, DivergenceReport& r) {
    j.at("ns").get_to(r.ns);
    j.at("sums").get_to(r.sums);
    j.at("fitted_exponent").get_to(r.fitted_exponent);
    j.at("fitted_r2").get_to(r.fitted_r2);
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
}

void to_json(nlohmann::json& j, const PicardTrace& r) {
    j = {{"iterates", r.iterates},
         {"gaps", r.gaps},
         {"converged", r.converged},
         {"iterations_used", r.iterations_used},
         {"residual", r.residual},
         {"contraction_factor", r.contraction_factor}};
}

void from_json(const nlohmann::json& j, PicardTrace& r) {
    j.at("iterates").get_to(r.iterates);
    j.at("gaps").get_to(r.gaps);
    j.at("converged").get_to(r.converged);
    j.at("iterations_used").get_to(r.iterations_used);
    j.at("residual").get_to(r.residual);
    j.at("contraction_factor").get_to(r.contraction_factor);
}

void to_json(nlohmann::json& j, const GapCheck& r) {
    j = {{"d0", r.d0}, {"bound", r.bound}, {"satisfied", r.satisfied}};
}

void from_json(const nlohmann::json& j, GapCheck& r) {
    j.at("d0").get_to(r.d0);
    j.at("bound").get_to(r.bound);
    j.at("satisfied").get_to(r.satisfied);
}

void to_json(nlohmann::json& j, const IdentityCheck& r) {
    j = {{"lhs", r.lhs}, {"rhs", r.rhs}, {"residual", r.residual}};
}

void from_json(const nlohmann::json& j, IdentityCheck& r) {
    j.at("lhs").get_to(r.lhs);
    j.at("rhs").get_to(r.rhs);
    j.at("residual").get_to(r.residual);
}

}  // namespace fracdt
