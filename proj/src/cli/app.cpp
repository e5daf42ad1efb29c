#include "mateq/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "mateq/equation_solver.hpp"
#include "mateq/error.hpp"
#include "mateq/matrix_io.hpp"
#include "mateq/stress_stepper.hpp"

namespace mateq::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

enum class Format { Text, Json };

constexpr double kResidualRelBound = 1e-10;

struct MatrixSource {
    std::string input;
    std::vector<std::size_t> zero;

    bool given() const { return !input.empty() || !zero.empty(); }

    Matrix load() const {
        if (!input.empty()) return io::read_matrix_file(input);
        if (zero.size() == 2) return Matrix::zeros(zero[0], zero[1]);
        throw InvalidParameter("a matrix is required: pass --input FILE or --zero M N");
    }
};

struct SolutionReport {
    Matrix x;
    double root;
    bool tangent;
    bool ill_conditioned;
    double residual;
};

struct SampleReport {
    std::optional<double> c;
    Matrix x;
    double norm;
    std::optional<double> residual;
};

// Everything one `solve` run produced.
struct RunReport {
    CaseLabel label;
    std::string norm;
    double y;
    std::vector<ScalarRoot> roots;
    std::vector<SolutionReport> solutions;
    std::optional<double> radius;
    std::vector<SampleReport> samples;
    double residual_bound;
    double timing_ms;

    bool residuals_within_bound() const {
        const auto ok = [this](double r) { return r <= residual_bound; };
        return std::all_of(solutions.begin(), solutions.end(), [&](const auto& s) { return ok(s.residual); }) &&
               std::all_of(samples.begin(), samples.end(),
                           [&](const auto& s) { return !s.residual || ok(*s.residual); });
    }
};

const char* sign_str(CoefficientSign s) {
    switch (s) {
        case CoefficientSign::Positive: return "+";
        case CoefficientSign::Negative: return "-";
        case CoefficientSign::Zero: return "0";
    }
    return "?";
}

std::string case_str(const CaseLabel& label) { return std::string(1, case_letter(label.tag)); }

std::string count_str(const CaseLabel& label) {
    return label.degenerate ? "infinitely many" : std::to_string(label.expected_root_count);
}

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void print_matrix(std::ostream& out, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << " ";
        for (std::size_t j = 0; j < m.cols(); ++j) out << ' ' << std::setw(13) << io::format_sig(m(i, j));
        out << '\n';
    }
}

json thresholds_json(const CaseLabel& label) {
    json t = json::object();
    if (label.threshold_max) t["t0"] = *label.threshold_max;
    if (label.threshold_min) t["t1"] = *label.threshold_min;
    return t;
}

void print_thresholds(std::ostream& out, const CaseLabel& label) {
    if (!label.threshold_max && !label.threshold_min) return;
    out << "thresholds:";
    if (label.threshold_max) out << " t0 = " << io::format_exact(*label.threshold_max);
    if (label.threshold_min) out << " t1 = " << io::format_exact(*label.threshold_min);
    out << '\n';
}

json report_json(const RunReport& r) {
    json j;
    j["case"] = case_str(r.label);
    j["expected_count"] = r.label.degenerate ? json("infinite") : json(r.label.expected_root_count);
    j["norm"] = r.norm;
    j["y"] = r.y;
    j["thresholds"] = thresholds_json(r.label);
    j["roots"] = json::array();
    for (const auto& root : r.roots) {
        j["roots"].push_back({{"x", root.x}, {"sign", sign_str(root.coefficient_sign)}, {"tangent", root.tangent}});
    }
    if (r.radius) {
        json samples = json::array();
        for (const auto& s : r.samples) samples.push_back({{"matrix", io::to_json(s.x)}, {"residual", *s.residual}});
        j["solutions"] = {{"degenerate", {{"radius", *r.radius}, {"samples", samples}}}};
    } else {
        j["solutions"] = json::array();
        for (const auto& s : r.solutions) {
            j["solutions"].push_back({{"matrix", io::to_json(s.x)},
                                      {"root", s.root},
                                      {"tangent", s.tangent},
                                      {"ill_conditioned", s.ill_conditioned},
                                      {"residual", s.residual}});
        }
    }
    j["residual_bound"] = r.residual_bound;
    j["residuals_within_bound"] = r.residuals_within_bound();
    j["timing_ms"] = r.timing_ms;
    return j;
}

void report_text(std::ostream& out, const RunReport& r) {
    out << "case: " << case_str(r.label) << '\n';
    out << "expected solutions: " << count_str(r.label) << '\n';
    out << "norm: " << r.norm << '\n';
    out << "|Y| = " << io::format_exact(r.y) << '\n';
    print_thresholds(out, r.label);
    out << "scalar roots:\n";
    for (const auto& root : r.roots) {
        out << "  x = " << io::format_exact(root.x) << "  sign = " << sign_str(root.coefficient_sign)
            << "  tangent = " << (root.tangent ? "yes" : "no") << '\n';
    }
    if (r.radius) {
        out << "degenerate: {0} ∪ sphere radius " << io::format_exact(*r.radius) << '\n';
        for (std::size_t k = 0; k < r.samples.size(); ++k) {
            out << "sample " << k + 1 << ": residual = " << io::format_sig(*r.samples[k].residual) << '\n';
            print_matrix(out, r.samples[k].x);
        }
    } else {
        for (std::size_t k = 0; k < r.solutions.size(); ++k) {
            const auto& s = r.solutions[k];
            out << "solution " << k + 1 << ": root = " << io::format_exact(s.root)
                << "  tangent = " << (s.tangent ? "yes" : "no") << "  residual = " << io::format_sig(s.residual)
                << (s.ill_conditioned ? "  (ill-conditioned)" : "") << '\n';
            print_matrix(out, s.x);
        }
    }
    out << "residuals within bound " << io::format_sig(r.residual_bound) << ": "
        << (r.residuals_within_bound() ? "yes" : "NO") << '\n';
    out << "timing: " << io::format_sig(r.timing_ms, 3) << " ms\n";
}

struct SolveArgs {
    double a = 0.0;
    double b = 0.0;
    MatrixSource matrix;
    std::string norm = "frobenius";
    std::size_t samples = 3;
};

int cmd_solve(const SolveArgs& args, Format format, std::ostream& out, std::ostream& err) {
    const SolverParams params(args.a, args.b);
    const Norm norm = parse_norm(args.norm);
    const Matrix y = args.matrix.load();

    const auto start = Clock::now();
    const EquationResult result = solve_equation_detailed(params, y, norm);

    RunReport r{};
    r.label = result.scalar.label;
    r.norm = std::string(norm.name());
    r.y = result.y;
    r.roots = result.scalar.roots;
    r.residual_bound = kResidualRelBound * std::max(1.0, result.y);
    if (result.set.is_degenerate()) {
        const auto& sphere = result.set.sphere();
        r.radius = sphere.radius;
        auto reps = degenerate_representatives(sphere, norm, y.rows(), y.cols(), args.samples);
        // Drop the zero matrix; the report names {0} separately.
        for (std::size_t k = 1; k < reps.size(); ++k) {
            r.samples.push_back({std::nullopt, reps[k], norm(reps[k]), residual(params, reps[k], y, norm)});
        }
    } else {
        for (const Solution& s : result.set.solutions()) {
            r.solutions.push_back({s.x, s.root, s.tangent, s.ill_conditioned, residual(params, s.x, y, norm)});
        }
    }
    r.timing_ms = elapsed_ms(start);

    if (format == Format::Json) {
        out << report_json(r).dump(2) << '\n';
    } else {
        report_text(out, r);
    }
    if (!r.residuals_within_bound()) {
        err << "error: residual exceeds the guaranteed bound " << io::format_exact(r.residual_bound) << '\n';
        return kSolverFailure;
    }
    return kOk;
}

struct ClassifyArgs {
    double a = 0.0;
    double b = 0.0;
    std::optional<double> y;
    MatrixSource matrix;
    std::string norm = "frobenius";
};

int cmd_classify(const ClassifyArgs& args, Format format, std::ostream& out) {
    const SolverParams params(args.a, args.b);
    double y = 0.0;
    if (args.y) {
        y = *args.y;
    } else {
        y = parse_norm(args.norm)(args.matrix.load());
    }
    const CaseLabel label = classify(params, y);
    const CriticalPoints cp = critical_points(params);

    if (format == Format::Json) {
        json j;
        j["case"] = case_str(label);
        j["expected_count"] = label.degenerate ? json("infinite") : json(label.expected_root_count);
        j["y"] = y;
        j["thresholds"] = thresholds_json(label);
        if (label.radius) j["radius"] = *label.radius;
        json c = json::object();
        if (cp.x0) c["x0"] = *cp.x0;
        if (cp.x1) c["x1"] = *cp.x1;
        if (cp.sign_change) c["sign_change"] = *cp.sign_change;
        j["critical_points"] = c;
        out << j.dump(2) << '\n';
        return kOk;
    }
    out << "case: " << case_str(label) << '\n';
    out << "expected solutions: " << count_str(label) << '\n';
    out << "y = " << io::format_exact(y) << '\n';
    print_thresholds(out, label);
    if (label.radius) out << "degenerate radius: " << io::format_exact(*label.radius) << '\n';
    if (cp.x0 || cp.x1 || cp.sign_change) {
        out << "critical points:";
        if (cp.x0) out << " x0 = " << io::format_exact(*cp.x0);
        if (cp.x1) out << " x1 = " << io::format_exact(*cp.x1);
        if (cp.sign_change) out << " sign_change = " << io::format_exact(*cp.sign_change);
        out << '\n';
    }
    return kOk;
}

struct SampleArgs {
    std::optional<double> radius;
    std::optional<double> a;
    std::optional<double> b;
    std::vector<double> c;
    std::size_t rows = 2;
    std::size_t cols = 2;
    std::size_t count = 3;
    std::string norm = "frobenius";
};

int cmd_sample(const SampleArgs& args, Format format, std::ostream& out) {
    const Norm norm = parse_norm(args.norm);
    std::optional<SolverParams> params;
    double radius = 0.0;
    if (args.radius) {
        radius = *args.radius;
        if (args.a || args.b) throw InvalidParameter("pass either --radius or --a/--b, not both");
    } else {
        if (!args.a || !args.b) throw InvalidParameter("sample needs --radius or both --a and --b");
        params.emplace(*args.a, *args.b);
        const CriticalPoints cp = critical_points(*params);
        if (!cp.sign_change) {
            throw InvalidParameter("no degenerate solution set for these a, b: needs -1<a<0, b<0 or a<-1, b>0");
        }
        radius = *cp.sign_change;
    }

    std::vector<SampleReport> samples;
    const Matrix zero = Matrix::zeros(args.rows, args.cols);
    const auto add = [&](std::optional<double> c, Matrix x) {
        const double n = norm(x);
        std::optional<double> res;
        if (params) res = residual(*params, x, zero, norm);
        samples.push_back({c, std::move(x), n, res});
    };
    if (!args.c.empty()) {
        for (double c : args.c) add(c, sample_degenerate(norm, radius, c, args.rows, args.cols));
    } else if (args.rows >= 2 && args.cols >= 2) {
        for (std::size_t k = 0; k < args.count; ++k) {
            const double c = args.count == 1 ? 0.0 : radius * static_cast<double>(k) / static_cast<double>(args.count - 1);
            add(c, sample_degenerate(norm, radius, std::min(c, radius), args.rows, args.cols));
        }
    } else {
        const auto reps = degenerate_representatives({radius}, norm, args.rows, args.cols);
        for (const auto& x : reps) add(std::nullopt, x);
    }

    if (format == Format::Json) {
        json j;
        j["radius"] = radius;
        j["norm"] = std::string(norm.name());
        j["samples"] = json::array();
        for (const auto& s : samples) {
            json e{{"matrix", io::to_json(s.x)}, {"norm", s.norm}};
            if (s.c) e["c"] = *s.c;
            if (s.residual) e["residual"] = *s.residual;
            j["samples"].push_back(e);
        }
        out << j.dump(2) << '\n';
        return kOk;
    }
    out << "degenerate: {0} ∪ sphere radius " << io::format_exact(radius) << '\n';
    out << "norm: " << norm.name() << '\n';
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& s = samples[k];
        out << "sample " << k + 1 << ":";
        if (s.c) out << " c = " << io::format_exact(*s.c);
        out << "  norm = " << io::format_exact(s.norm);
        if (s.residual) out << "  residual = " << io::format_sig(*s.residual);
        out << '\n';
        print_matrix(out, s.x);
    }
    return kOk;
}

struct SimulateArgs {
    double dt = 0.0;
    double tau_p = 0.0;
    double sigma_c = 0.0;
    std::string driving;
    std::string output;
    std::string initial;
};

std::string trajectory_csv(const std::vector<stress::State>& trajectory) {
    std::string csv = "step,s11,s12,s13,s21,s22,s23,s31,s32,s33,norm,root,coefficient\n";
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        const auto& s = trajectory[k];
        csv += std::to_string(k + 1);
        for (double v : s.sigma_v.data()) csv += ',' + io::format_exact(v);
        csv += ',' + io::format_exact(norm_frobenius(s.sigma_v));
        csv += ',' + io::format_exact(s.scalar_root);
        csv += ',' + io::format_exact(s.coefficient) + '\n';
    }
    return csv;
}

int cmd_simulate(const SimulateArgs& args, Format format, std::ostream& out, std::ostream& err) {
    const stress::StepConfig config(args.dt, args.tau_p, args.sigma_c);
    const std::vector<Matrix> driving = io::parse_csv_blocks(io::read_file(args.driving));
    std::optional<Matrix> initial;
    if (!args.initial.empty()) initial = io::read_matrix_file(args.initial);

    const auto start = Clock::now();
    const auto trajectory = stress::simulate(config, driving, {}, initial);
    const double ms = elapsed_ms(start);

    const std::string csv = trajectory_csv(trajectory);
    if (args.output == "-") {
        out << csv;
    } else {
        std::ofstream file(args.output, std::ios::binary);
        if (!file) throw InvalidParameter("cannot write '" + args.output + "'");
        file << csv;
    }

    const auto warnings = std::count_if(trajectory.begin(), trajectory.end(), [](const auto& s) { return s.trace_warning; });
    if (warnings > 0) {
        err << "warning: " << warnings << " step input(s) are not trace-free (deviatoric)\n";
    }
    if (args.output == "-") return kOk;

    const double final_norm = norm_frobenius(trajectory.back().sigma_v);
    if (format == Format::Json) {
        json j{{"steps", trajectory.size()},
               {"output", args.output},
               {"final_norm", final_norm},
               {"trace_warnings", warnings},
               {"timing_ms", ms}};
        out << j.dump(2) << '\n';
    } else {
        out << "steps: " << trajectory.size() << '\n'
            << "final |sigma_v|_F = " << io::format_exact(final_norm) << '\n'
            << "trajectory written to " << args.output << '\n';
    }
    return kOk;
}

std::string one_line(std::string msg) {
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    return msg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solve (1 + a exp(-|X|/b)) X = Y over real matrices", "mateq"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string format_name = "text";
    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format_name, "Output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
    };
    const auto add_matrix = [](CLI::App* sub, MatrixSource& src) {
        auto* input = sub->add_option("--input", src.input, "Matrix file (CSV rows or JSON {rows, cols, data})");
        auto* zero = sub->add_option("--zero", src.zero, "Use the M x N zero matrix")->expected(2);
        input->excludes(zero);
    };
    const auto add_norm = [](CLI::App* sub, std::string& norm) {
        sub->add_option("--norm", norm, "one, two, inf or frobenius")->capture_default_str();
    };

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Compute every solution X for a given Y");
    solve_cmd->add_option("--a", solve.a, "Prefactor a")->required();
    solve_cmd->add_option("--b", solve.b, "Scale b (nonzero)")->required();
    add_matrix(solve_cmd, solve.matrix);
    add_norm(solve_cmd, solve.norm);
    solve_cmd->add_option("--samples", solve.samples, "Sphere samples to print for degenerate sets")
        ->capture_default_str();
    add_format(solve_cmd);

    ClassifyArgs classify_args;
    auto* classify_cmd = app.add_subcommand("classify", "Report the solvability case for (a, b, |Y|)");
    classify_cmd->add_option("--a", classify_args.a, "Prefactor a")->required();
    classify_cmd->add_option("--b", classify_args.b, "Scale b (nonzero)")->required();
    auto* y_opt = classify_cmd->add_option("--y", classify_args.y, "Norm of Y");
    add_matrix(classify_cmd, classify_args.matrix);
    add_norm(classify_cmd, classify_args.norm);
    add_format(classify_cmd);

    SampleArgs sample;
    auto* sample_cmd = app.add_subcommand("sample", "Print matrices of the degenerate solution set");
    sample_cmd->add_option("--radius", sample.radius, "Sphere radius b ln|a|");
    sample_cmd->add_option("--a", sample.a, "Derive the radius from a");
    sample_cmd->add_option("--b", sample.b, "Derive the radius from b");
    sample_cmd->add_option("--c", sample.c, "Construction parameter(s) in [0, radius]");
    sample_cmd->add_option("--rows", sample.rows)->capture_default_str();
    sample_cmd->add_option("--cols", sample.cols)->capture_default_str();
    sample_cmd->add_option("--count", sample.count, "Number of samples when --c is absent")->capture_default_str();
    add_norm(sample_cmd, sample.norm);
    add_format(sample_cmd);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run the implicit Euler stress update over a driving sequence");
    sim_cmd->add_option("--dt", sim.dt, "Time step")->required();
    sim_cmd->add_option("--tau-p", sim.tau_p, "Relaxation timescale")->required();
    sim_cmd->add_option("--sigma-c", sim.sigma_c, "Critical stress")->required();
    sim_cmd->add_option("--driving", sim.driving, "3x3 CSV blocks separated by blank lines")->required();
    sim_cmd->add_option("--output", sim.output, "Trajectory CSV path, '-' for stdout")->required();
    sim_cmd->add_option("--initial", sim.initial, "Initial 3x3 stress (CSV or JSON)");
    add_format(sim_cmd);

    std::vector<const char*> argv{"mateq"};
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return kUsageError;
    }

    const Format format = format_name == "json" ? Format::Json : Format::Text;
    try {
        if (*solve_cmd) return cmd_solve(solve, format, out, err);
        if (*classify_cmd) {
            if (!*y_opt && !classify_args.matrix.given()) {
                throw InvalidParameter("classify needs --y, --input or --zero");
            }
            return cmd_classify(classify_args, format, out);
        }
        if (*sample_cmd) return cmd_sample(sample, format, out);
        if (*sim_cmd) return cmd_simulate(sim, format, out, err);
    } catch (const InvalidParameter& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: internal: " << one_line(e.what()) << '\n';
        return kSolverFailure;
    }
    return kUsageError;
}

}  // namespace mateq::cli
