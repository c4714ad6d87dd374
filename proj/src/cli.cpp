#include "fracdt/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fracdt/errors.hpp"
#include "fracdt/io.hpp"
#include "fracdt/kernels.hpp"
#include "fracdt/riemann_probe.hpp"

namespace fracdt::cli {

using nlohmann::json;

namespace {

template <typename T>
T parse_number(std::string_view text) {
    T value{};
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
        throw UsageError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::pair<std::string, std::string> split_family(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return {spec, ""};
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

struct Common {
    std::string format = "csv";
    std::string out_path;
    std::uint64_t seed = 0;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_iter = 50;

    QuadratureConfig quadrature() const {
        QuadratureConfig cfg;
        cfg.rel_tol = rel_tol;
        cfg.abs_tol = abs_tol;
        cfg.validate();
        return cfg;
    }
};

// RFC 4180 quoting for cells such as "poly:1,0,3".
std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + '"';
}

// Output document: CSV rows + trailer comments, or one JSON object.
struct Document {
    std::string subcommand;
    json params = json::object();
    json results = json::object();
    json diagnostics = json::object();
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    std::vector<std::string> trailer;

    std::string render(const std::string& format) const {
        std::ostringstream os;
        if (format == "json") {
            json doc = {{"schema_version", kSchemaVersion},
                        {"subcommand", subcommand},
                        {"params", params},
                        {"results", results},
                        {"diagnostics", diagnostics}};
            os << doc.dump(2) << '\n';
            return os.str();
        }
        auto line = [&os](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i]);
            os << '\n';
        };
        line(csv_header);
        for (const auto& row : csv_rows) line(row);
        for (const auto& t : trailer) os << "# " << t << '\n';
        return os.str();
    }
};

std::string fmt(double x) { return format_double(x); }
std::string fmt(bool b) { return b ? "true" : "false"; }

void error_record(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

QuadratureScheme parse_scheme(const std::string& s) {
    if (s == "substitution") return QuadratureScheme::substitution;
    if (s == "gauss_jacobi") return QuadratureScheme::gauss_jacobi;
    throw UsageError("unknown scheme: " + s);
}

SamplePoint parse_sample(const std::string& s) {
    if (s == "left") return SamplePoint::left;
    if (s == "right") return SamplePoint::right;
    if (s == "midpoint") return SamplePoint::midpoint;
    throw UsageError("unknown sample point: " + s);
}

// Populated by the subcommand handlers; returns the exit code.
using Handler = std::function<int(Document&)>;

int integrate_cmd(Document& doc, const Common& c, const std::string& fspec, double alpha, double t,
                  const std::string& scheme, bool numeric) {
    const Integrand f = parse_integrand(fspec);
    QuadratureConfig cfg = c.quadrature();
    cfg.scheme = parse_scheme(scheme);
    cfg.symbolic_shortcut = !numeric;
    const QuadratureResult r = jumarie_integral(f, FractionalOrder(alpha), t, cfg);
    doc.params = {{"f", fspec}, {"alpha", alpha}, {"t", t}, {"scheme", scheme}, {"numeric", numeric},
                  {"rel_tol", cfg.rel_tol}, {"abs_tol", cfg.abs_tol}};
    doc.results = r;
    doc.csv_header = {"f", "alpha", "t", "value", "error_estimate", "evals", "converged"};
    doc.csv_rows.push_back({fspec, fmt(alpha), fmt(t), fmt(r.value), fmt(r.error_estimate),
                            std::to_string(r.evals), fmt(r.converged)});
    return r.converged ? kOk : kNonConvergence;
}

int table_cmd(Document& doc, const Common& c, const std::vector<double>& alphas,
              const std::vector<double>& gammas, const std::vector<double>& ts) {
    QuadratureConfig cfg = c.quadrature();
    cfg.symbolic_shortcut = false;
    doc.params = {{"alphas", alphas}, {"gammas", gammas}, {"ts", ts}, {"rel_tol", cfg.rel_tol},
                  {"abs_tol", cfg.abs_tol}};
    doc.csv_header = {"alpha", "gamma", "t", "closed_form", "quadrature", "rel_err", "error_estimate", "evals",
                      "converged"};
    json rows = json::array();
    bool all_converged = true;
    double worst = 0.0;
    for (double a : alphas) {
        const FractionalOrder order(a);
        for (double g : gammas) {
            const Integrand f = power(g);
            for (double t : ts) {
                const double exact = closed_form(f, order, t);
                const QuadratureResult q = jumarie_integral(f, order, t, cfg);
                const double rel = std::abs(q.value - exact) / std::max(std::abs(exact), 1e-300);
                worst = std::max(worst, rel);
                all_converged = all_converged && q.converged;
                doc.csv_rows.push_back({fmt(a), fmt(g), fmt(t), fmt(exact), fmt(q.value), fmt(rel),
                                        fmt(q.error_estimate), std::to_string(q.evals), fmt(q.converged)});
                rows.push_back({{"alpha", a}, {"gamma", g}, {"t", t}, {"closed_form", exact},
                                {"quadrature", q}, {"rel_err", rel}});
            }
        }
    }
    doc.results = {{"rows", rows}, {"max_rel_err", worst}};
    doc.trailer.push_back("max_rel_err=" + fmt(worst));
    return all_converged ? kOk : kNonConvergence;
}

int probe_cmd(Document& doc, const Common& c, const std::string& fspec, double alpha, double t,
              const std::vector<long>& ns, const std::string& sample) {
    const Integrand f = parse_integrand(fspec);
    PartitionScheme scheme{parse_sample(sample)};
    const SideBySide s = side_by_side(f, FractionalOrder(alpha), t, ns, c.quadrature(), scheme);
    doc.params = {{"f", fspec}, {"alpha", alpha}, {"t", t}, {"ns", ns}, {"sample", sample}};
    doc.results = {{"definition_value", s.definition_value}, {"report", s.report}};
    doc.csv_header = {"n", "sum", "alpha", "t"};
    for (std::size_t k = 0; k < ns.size(); ++k) {
        doc.csv_rows.push_back({std::to_string(ns[k]), fmt(s.report.sums[k]), fmt(alpha), fmt(t)});
    }
    doc.trailer.push_back("slope=" + fmt(s.report.fitted_exponent) + " r2=" + fmt(s.report.fitted_r2) +
                          " verdict=" + std::string(to_string(s.report.verdict)) +
                          " definition_value=" + fmt(s.definition_value));
    return kOk;
}

struct SolveArgs {
    std::string preset = "linear";
    double L = 1.0;
    double x0 = 1.0;
    double alpha = 0.5;
    double kappa = 1.0;
    std::string driver = "constant:1";
    double horizon = 1.0;
    std::size_t m = 512;
    double tol = 1e-8;
};

DriverPath build_path(const SolveArgs& a, const Common& c) {
    return make_driver(parse_driver(a.driver, c.seed), a.kappa, FractionalOrder(a.alpha),
                       uniform_grid(a.horizon, a.m));
}

json solve_params(const SolveArgs& a, const Common& c) {
    return {{"preset", a.preset}, {"L", a.L},       {"x0", a.x0},           {"alpha", a.alpha},
            {"kappa", a.kappa},   {"driver", a.driver}, {"horizon", a.horizon}, {"m", a.m},
            {"seed", c.seed}};
}

int solve_cmd(Document& doc, const Common& c, const SolveArgs& a) {
    const DriverPath path = build_path(a, c);
    const CoefficientPair coeffs = coefficient_preset(a.preset, a.L);
    PicardOptions opts;
    opts.tol = a.tol;
    opts.max_iter = c.max_iter;
    const PicardTrace trace = picard_solve(coeffs, a.x0, path, opts);
    doc.params = solve_params(a, c);
    doc.params["tol"] = a.tol;
    doc.params["max_iter"] = c.max_iter;
    doc.results = {{"grid", path.grid()}, {"trace", trace}};
    doc.csv_header = {"row", "index", "t", "value"};
    for (std::size_t n = 0; n < trace.gaps.size(); ++n) {
        doc.csv_rows.push_back({"gap", std::to_string(n), "", fmt(trace.gaps[n])});
    }
    const auto& x = trace.iterates.back();
    for (std::size_t k = 0; k < x.size(); ++k) {
        doc.csv_rows.push_back({"x", std::to_string(k), fmt(path.grid()[k]), fmt(x[k])});
    }
    doc.trailer.push_back("converged=" + fmt(trace.converged) + " iterations=" +
                          std::to_string(trace.iterations_used) + " residual=" + fmt(trace.residual) +
                          " contraction_factor=" + fmt(trace.contraction_factor));
    return trace.converged ? kOk : kNonConvergence;
}

constexpr double kIdentityTolerance = 1e-8;

int verify_cmd(Document& doc, const Common& c, const SolveArgs& a, const std::string& wspec) {
    const DriverPath path = build_path(a, c);
    const Integrand wf = parse_integrand(wspec);
    const auto fn = pointwise(wf);
    std::vector<double> w;
    for (double u : path.grid()) w.push_back(fn(u));
    const IdentityCheck id =
        verify_driver_identity(path.grid(), w, a.kappa, path.alpha(), path.horizon(), c.quadrature());
    const GapCheck gap = check_first_gap(coefficient_preset(a.preset, a.L), a.x0, path);
    doc.params = solve_params(a, c);
    doc.params["w"] = wspec;
    doc.results = {{"identity", id}, {"first_gap", gap}};
    doc.diagnostics["identity_tolerance"] = kIdentityTolerance;
    doc.csv_header = {"check", "value", "reference", "residual", "passed"};
    doc.csv_rows.push_back(
        {"identity", fmt(id.lhs), fmt(id.rhs), fmt(id.residual), fmt(id.residual <= kIdentityTolerance)});
    doc.csv_rows.push_back({"first_gap", fmt(gap.d0), fmt(gap.bound), fmt(gap.bound - gap.d0), fmt(gap.satisfied)});
    return kOk;
}

}  // namespace

template <typename T>
std::vector<T> parse_list(const std::string& text) {
    std::vector<T> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto stop = comma == std::string::npos ? text.size() : comma;
        out.push_back(parse_number<T>(std::string_view(text).substr(start, stop - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

template std::vector<double> parse_list<double>(const std::string&);
template std::vector<long> parse_list<long>(const std::string&);

Integrand parse_integrand(const std::string& spec) {
    const auto [family, arg] = split_family(spec);
    if (family == "const") return constant(parse_number<double>(arg));
    if (family == "pow") return power(parse_number<double>(arg));
    if (family == "delta" && arg.empty()) return dirac_delta();
    if (family == "exp" && arg.empty()) return callable([](double x) { return std::exp(x); });
    if (family == "sin") {
        const double w = parse_number<double>(arg);
        return callable([w](double x) { return std::sin(w * x); });
    }
    if (family == "poly") {
        const auto coeffs = parse_list<double>(arg);
        return callable([coeffs](double x) {
            double acc = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
            return acc;
        });
    }
    throw UsageError("unknown integrand '" + spec + "' (expected const:c, pow:g, delta, exp, sin:w, poly:c0,c1,...)");
}

DriverModel parse_driver(const std::string& spec, std::uint64_t seed) {
    const auto [family, arg] = split_family(spec);
    if (family == "constant") return ConstantDriver{parse_number<double>(arg)};
    if (family == "sinusoid") {
        const auto p = parse_list<double>(arg);
        if (p.size() != 2) throw UsageError("sinusoid driver expects amplitude,frequency");
        return SinusoidDriver{p[0], p[1]};
    }
    if (family == "seeded") return SeededSmoothDriver{seed, parse_number<int>(arg)};
    throw UsageError("unknown driver '" + spec + "' (expected constant:level, sinusoid:a,f, seeded:modes)");
}

CoefficientPair coefficient_preset(const std::string& name, double L) {
    using F = std::function<double(double, double)>;
    const F zero = [](double, double) { return 0.0; };
    if (name == "zero") return {zero, zero, L};
    if (name == "linear") return {[](double, double x) { return x; }, zero, L};
    if (name == "sine") return {[](double, double x) { return std::sin(x); }, zero, L};
    if (name == "tlinear") return {[](double t, double x) { return t * x; }, zero, L};
    if (name == "driver") return {zero, [](double, double) { return 1.0; }, L};
    if (name == "mixed") {
        return {[](double, double x) { return -0.5 * x; }, [](double, double x) { return 0.5 * std::sin(x); }, L};
    }
    if (name == "growth") return {[](double, double x) { return 1.0 + std::abs(x); }, zero, L};
    throw UsageError("unknown coefficient preset '" + name + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Integrals with respect to (dt)^alpha, Riemann-sum divergence probes and Picard solves", "fracdt"};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", common.out_path, "Output file (default: standard output)");
    app.add_option("--seed", common.seed, "Seed for seeded driver paths");
    app.add_option("--rel-tol", common.rel_tol, "Quadrature relative tolerance");
    app.add_option("--abs-tol", common.abs_tol, "Quadrature absolute tolerance");
    app.add_option("--max-iter", common.max_iter, "Picard iteration cap");

    Handler handler;
    Document doc;

    std::string fspec = "const:1";
    double alpha = 0.5;
    double t = 1.0;
    std::string scheme = "substitution";
    bool numeric = false;
    auto* integrate = app.add_subcommand("integrate", "One integral with respect to (dt)^alpha");
    integrate->add_option("--f", fspec, "Integrand: const:c, pow:g, delta, exp, sin:w, poly:c0,c1,...");
    integrate->add_option("--alpha", alpha, "Order in (0, 1]")->required();
    integrate->add_option("--t", t, "Upper limit")->required();
    integrate->add_option("--scheme", scheme, "substitution or gauss_jacobi");
    integrate->add_flag("--numeric", numeric, "Quadrature even for symbolic integrands");
    integrate->callback([&] {
        handler = [&](Document& d) { return integrate_cmd(d, common, fspec, alpha, t, scheme, numeric); };
    });

    std::string alphas = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
    std::string gammas = "0,0.5,1,2,3.7";
    std::string ts = "0.5,1,2";
    auto* table = app.add_subcommand("table", "Power rule: closed form against quadrature");
    table->add_option("--alphas", alphas, "Comma-separated orders");
    table->add_option("--gammas", gammas, "Comma-separated exponents > -1");
    table->add_option("--ts", ts, "Comma-separated upper limits");
    table->callback([&] {
        handler = [&](Document& d) {
            return table_cmd(d, common, parse_list<double>(alphas), parse_list<double>(gammas),
                             parse_list<double>(ts));
        };
    });

    std::string ns = "16,64,256,1024,4096";
    std::string sample = "right";
    auto* probe = app.add_subcommand("probe", "Riemann sums of the (dt)^alpha integral versus the definition");
    probe->add_option("--f", fspec, "Integrand family");
    probe->add_option("--alpha", alpha, "Order in (0, 1]")->required();
    probe->add_option("--t", t, "Upper limit")->required();
    probe->add_option("--ns", ns, "Comma-separated partition sizes");
    probe->add_option("--sample", sample, "left, right or midpoint");
    probe->callback([&] {
        handler = [&](Document& d) { return probe_cmd(d, common, fspec, alpha, t, parse_list<long>(ns), sample); };
    });

    SolveArgs sa;
    auto add_solve_options = [&sa](CLI::App* sub) {
        sub->add_option("--preset", sa.preset, "zero, linear, sine, tlinear, driver, mixed, growth");
        sub->add_option("--L", sa.L, "Linear growth / Lipschitz constant");
        sub->add_option("--x0", sa.x0, "Initial value");
        sub->add_option("--alpha", sa.alpha, "Order in (0, 1)");
        sub->add_option("--kappa", sa.kappa, "Driver path constant");
        sub->add_option("--driver", sa.driver, "constant:level, sinusoid:a,f, seeded:modes");
        sub->add_option("--horizon", sa.horizon, "Horizon T");
        sub->add_option("--m", sa.m, "Grid intervals");
    };
    auto* solve = app.add_subcommand("solve", "Picard iteration for dX = g dt + h dF^alpha");
    add_solve_options(solve);
    solve->add_option("--tol", sa.tol, "Stop once the sup-norm gap is below this");
    solve->callback([&] { handler = [&](Document& d) { return solve_cmd(d, common, sa); }; });

    std::string wspec = "const:1";
    auto* verify = app.add_subcommand("verify", "Driver-integral identity and first Picard gap bound");
    add_solve_options(verify);
    verify->add_option("--w", wspec, "Non-negative weight function family sampled on the grid");
    verify->callback([&] {
        if (verify->count("--m") == 0) sa.m = 64;
        handler = [&](Document& d) { return verify_cmd(d, common, sa, wspec); };
    });

    try {
        std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
        std::reverse(rest.begin(), rest.end());
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        error_record(err, "usage", e.what());
        return kUsage;
    }

    int code = kOk;
    try {
        doc.subcommand = app.get_subcommands().front()->get_name();
        doc.diagnostics["isa"] = std::string(kernels::isa_name(kernels::active_isa()));
        code = handler(doc);
    } catch (const UsageError& e) {
        error_record(err, "usage", e.what());
        return kUsage;
    } catch (const DomainError& e) {
        error_record(err, "domain", e.what());
        return kDomain;
    } catch (const ConvergenceError& e) {
        error_record(err, "convergence", e.what());
        return kNonConvergence;
    }

    const std::string text = doc.render(common.format);
    if (common.out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(common.out_path, std::ios::binary);
        if (!file) {
            error_record(err, "usage", "cannot open output file " + common.out_path);
            return kUsage;
        }
        file << text;
    }
    if (code == kNonConvergence) error_record(err, "convergence", "quadrature or Picard iteration did not converge");
    return code;
}

int run(const std::vector<std::string>& args) { return run(args, std::cout, std::cerr); }

}  // namespace fracdt::cli
