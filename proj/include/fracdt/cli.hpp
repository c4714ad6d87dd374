#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracdt/fude.hpp"
#include "fracdt/jumarie.hpp"

namespace fracdt::cli {

enum ExitCode : int { kOk = 0, kDomain = 1, kNonConvergence = 2, kUsage = 3 };

/// Bad command-line text (unparsable number, unknown family name).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Named integrand families: const:c, pow:g, delta, exp, sin:w, poly:c0,c1,...
Integrand parse_integrand(const std::string& spec);

/// constant:level, sinusoid:amplitude,frequency, seeded:modes
DriverModel parse_driver(const std::string& spec, std::uint64_t seed);

/// Coefficient presets for `solve` and `verify`: zero, linear, sine,
/// tlinear, driver, mixed, growth.
CoefficientPair coefficient_preset(const std::string& name, double L);

template <typename T>
std::vector<T> parse_list(const std::string& text);

/// Entry point; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args);

}  // namespace fracdt::cli
