#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracsl/diffusion.hpp"
#include "fracsl/discrete_slp.hpp"
#include "fracsl/errors.hpp"
#include "fracsl/grid.hpp"

namespace fracsl::io {

enum class Command { coeffs, discrete_sl, continuous_sl, diffusion };
enum class CoeffProfile { unit, file };
enum class Method { direct, kkt, matrix };
enum class OutputFormat { csv, json };

struct RunConfig {
    Command command = Command::discrete_sl;
    double alpha = 0.5;
    double beta = 1.0;
    int n = 4;
    double a = 0.0;
    double b = 1.0;
    CoeffProfile coeff_profile = CoeffProfile::unit;
    std::string coeff_file;
    Method method = Method::matrix;
    discrete::Normalization normalization = discrete::Normalization::weighted_unit;
    OutputFormat output_format = OutputFormat::csv;
    std::string output_path;
    int num_eigenfunctions = 0;
    std::vector<double> times;
    int trunc_k = 0;
    std::string initial_file;  // optional initial profile for the diffusion command
    bool write_unit_template = false;
};

struct CoefficientTable {
    std::vector<double> p, q, r;  // one entry per node, N+1 rows
};

// Three-column numeric text file: header line `# p q r`, then p_i q_i r_i per
// node, whitespace-separated.
inline CoefficientTable load_coefficients(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_coefficients: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("load_coefficients: '" + path + "' is empty");
    {
        std::istringstream header(line);
        std::string hash, cp, cq, cr;
        header >> hash >> cp >> cq >> cr;
        if (hash != "#" || cp != "p" || cq != "q" || cr != "r")
            throw std::runtime_error("load_coefficients: " + path +
                                     ":1: expected header line '# p q r'");
    }
    CoefficientTable table;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream row(line);
        double p, q, r;
        if (!(row >> p >> q >> r)) {
            std::string probe;
            if (!(std::istringstream(line) >> probe))
                continue;  // blank line
            throw std::runtime_error("load_coefficients: " + path + ":" + std::to_string(line_no) +
                                     ": expected three numeric columns");
        }
        std::string extra;
        if (row >> extra)
            throw std::runtime_error("load_coefficients: " + path + ":" + std::to_string(line_no) +
                                     ": trailing content '" + extra + "'");
        if (!(p > 0.0))
            throw std::domain_error("load_coefficients: " + path + ":" + std::to_string(line_no) +
                                    ": p must be positive");
        if (!(r > 0.0))
            throw std::domain_error("load_coefficients: " + path + ":" + std::to_string(line_no) +
                                    ": r must be positive");
        table.p.push_back(p);
        table.q.push_back(q);
        table.r.push_back(r);
    }
    if (table.p.size() < 3)
        throw std::runtime_error("load_coefficients: '" + path + "' holds fewer than 3 rows");
    return table;
}

inline std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

inline void write_coefficients(const std::string& path, const CoefficientTable& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_coefficients: cannot open '" + path + "'");
    out << "# p q r\n";
    for (std::size_t i = 0; i < table.p.size(); ++i)
        out << format_value(table.p[i]) << ' ' << format_value(table.q[i]) << ' '
            << format_value(table.r[i]) << '\n';
}

namespace detail {

inline std::string resolve_output_path(const std::string& path) {
    const char* dir = std::getenv("FRACSPEC_OUTPUT_DIR");
    if (dir == nullptr || path.empty()) return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(dir) / p).string();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
}

inline std::string csv_eigenvalue_table(const std::vector<double>& values) {
    std::string out = "index,lambda\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        out += std::to_string(i + 1) + "," + format_value(values[i]) + "\n";
    return out;
}

inline std::string csv_eigenfunction_table(const UniformGrid& grid,
                                           const std::vector<std::vector<double>>& padded) {
    std::string out = "x";
    for (std::size_t k = 0; k < padded.size(); ++k) out += ",y" + std::to_string(k + 1);
    out += "\n";
    for (int j = 0; j < grid.nodes(); ++j) {
        out += format_value(grid.node(j));
        for (const auto& y : padded) out += "," + format_value(y[static_cast<std::size_t>(j)]);
        out += "\n";
    }
    return out;
}

inline std::string json_number_array(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ",";
        out += format_value(values[i]);
    }
    out += "]";
    return out;
}

inline std::string json_eigen_report(const std::string& command, double alpha,
                                     const std::vector<double>& values,
                                     const UniformGrid& grid,
                                     const std::vector<std::vector<double>>& padded) {
    std::string out = "{\n  \"command\": \"" + command + "\",\n  \"alpha\": " +
                      format_value(alpha) + ",\n  \"eigenvalues\": " + json_number_array(values);
    if (!padded.empty()) {
        std::vector<double> xs(static_cast<std::size_t>(grid.nodes()));
        for (int j = 0; j < grid.nodes(); ++j) xs[static_cast<std::size_t>(j)] = grid.node(j);
        out += ",\n  \"x\": " + json_number_array(xs) + ",\n  \"eigenfunctions\": [";
        for (std::size_t k = 0; k < padded.size(); ++k) {
            if (k > 0) out += ",";
            out += "\n    " + json_number_array(padded[k]);
        }
        out += "\n  ]";
    }
    out += "\n}\n";
    return out;
}

struct EigenReport {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> padded_eigenfunctions;  // over all nodes
    UniformGrid grid;
    double alpha;
    std::string command;
};

inline void emit_eigen_report(const EigenReport& report, const RunConfig& cfg, std::ostream& out) {
    const std::string path = resolve_output_path(cfg.output_path);
    if (path.empty()) {
        out << "index,lambda\n";
        for (std::size_t i = 0; i < report.eigenvalues.size(); ++i)
            out << (i + 1) << "," << format_value(report.eigenvalues[i]) << "\n";
        return;
    }
    if (cfg.output_format == OutputFormat::csv) {
        write_file(path, csv_eigenvalue_table(report.eigenvalues));
        if (!report.padded_eigenfunctions.empty())
            write_file(path + ".eigvecs.csv",
                       csv_eigenfunction_table(report.grid, report.padded_eigenfunctions));
    } else {
        write_file(path, json_eigen_report(report.command, report.alpha, report.eigenvalues,
                                           report.grid, report.padded_eigenfunctions));
    }
    out << report.command << ": wrote " << report.eigenvalues.size() << " eigenvalues to " << path
        << "\n";
}

inline std::vector<std::vector<double>> pad_vectors(const UniformGrid& grid,
                                                    const std::vector<std::vector<double>>& interior,
                                                    int count) {
    std::vector<std::vector<double>> out;
    const int wanted = std::min<int>(count, static_cast<int>(interior.size()));
    out.reserve(static_cast<std::size_t>(std::max(wanted, 0)));
    for (int k = 0; k < wanted; ++k) {
        const auto padded = pad_with_zero_boundary(grid, interior[static_cast<std::size_t>(k)]);
        out.emplace_back(padded.values().begin(), padded.values().end());
    }
    return out;
}

inline continuous::ContinuousSLProblem make_continuous_problem(const RunConfig& cfg) {
    if (cfg.coeff_profile == CoeffProfile::unit) {
        return continuous::ContinuousSLProblem(
            cfg.a, cfg.b, cfg.alpha, [](double) { return 1.0; }, [](double) { return 0.0; },
            [](double) { return 1.0; }, cfg.n);
    }
    const auto table = load_coefficients(cfg.coeff_file);
    if (table.p.size() != static_cast<std::size_t>(cfg.n) + 1)
        throw std::runtime_error("coefficient file holds " + std::to_string(table.p.size()) +
                                 " rows but n = " + std::to_string(cfg.n) + " needs " +
                                 std::to_string(cfg.n + 1));
    const UniformGrid grid(cfg.a, cfg.b, cfg.n);
    auto lookup = [grid](std::vector<double> column) {
        return [grid, column = std::move(column)](double x) {
            const int j = static_cast<int>(std::llround((x - grid.a()) / grid.step()));
            if (j < 0 || j >= grid.nodes())
                throw std::out_of_range("coefficient sampler: x outside the grid");
            return column[static_cast<std::size_t>(j)];
        };
    };
    return continuous::ContinuousSLProblem(cfg.a, cfg.b, cfg.alpha, lookup(table.p),
                                           lookup(table.q), lookup(table.r), cfg.n);
}

inline int run_coeffs(const RunConfig& cfg, std::ostream& out) {
    if (cfg.write_unit_template) {
        if (cfg.output_path.empty())
            throw std::runtime_error("coeffs: --write-unit needs an output path");
        CoefficientTable table;
        table.p.assign(static_cast<std::size_t>(cfg.n) + 1, 1.0);
        table.q.assign(static_cast<std::size_t>(cfg.n) + 1, 0.0);
        table.r.assign(static_cast<std::size_t>(cfg.n) + 1, 1.0);
        write_coefficients(resolve_output_path(cfg.output_path), table);
        out << "coeffs: wrote unit profile with " << (cfg.n + 1) << " rows\n";
        return 0;
    }
    const auto table = load_coefficients(cfg.coeff_file);
    out << "coeffs: " << table.p.size() << " rows, p in [" << format_value(*std::min_element(table.p.begin(), table.p.end()))
        << ", " << format_value(*std::max_element(table.p.begin(), table.p.end())) << "], r in ["
        << format_value(*std::min_element(table.r.begin(), table.r.end())) << ", "
        << format_value(*std::max_element(table.r.begin(), table.r.end())) << "]\n";
    if (!cfg.output_path.empty()) write_coefficients(resolve_output_path(cfg.output_path), table);
    return 0;
}

inline int run_discrete(const RunConfig& cfg, std::ostream& out) {
    const UniformGrid grid(cfg.a, cfg.b, cfg.n);
    std::optional<discrete::SLCoefficients> coeffs;
    if (cfg.coeff_profile == CoeffProfile::unit) {
        coeffs.emplace(discrete::SLCoefficients::unit(grid, cfg.alpha));
    } else {
        auto table = load_coefficients(cfg.coeff_file);
        coeffs.emplace(grid, std::move(table.p), std::move(table.q), std::move(table.r), cfg.alpha);
    }
    const auto spectrum = discrete::solve_discrete(*coeffs, cfg.normalization);
    EigenReport report{spectrum.eigenvalues,
                       pad_vectors(grid, spectrum.eigenvectors, cfg.num_eigenfunctions), grid,
                       cfg.alpha, "discrete-sl"};
    emit_eigen_report(report, cfg, out);
    return 0;
}

inline int run_continuous(const RunConfig& cfg, std::ostream& out) {
    const auto problem = make_continuous_problem(cfg);
    EigenReport report{{}, {}, problem.grid(), cfg.alpha, "continuous-sl"};
    if (cfg.method == Method::direct) {
        const auto result = continuous::method1_solve(problem);
        report.eigenvalues = {result.value};
        if (cfg.num_eigenfunctions > 0)
            report.padded_eigenfunctions = pad_vectors(problem.grid(), {result.minimizer}, 1);
    } else if (cfg.method == Method::kkt) {
        if (cfg.coeff_profile != CoeffProfile::unit || cfg.a != 0.0 || cfg.b != 1.0)
            throw std::runtime_error("continuous-sl: the kkt method covers p=1, q=0, r=1 on [0,1]");
        const auto spectrum = continuous::method2_solve(cfg.alpha, cfg.n);
        report.eigenvalues = spectrum.eigenvalues;
        report.padded_eigenfunctions =
            pad_vectors(problem.grid(), spectrum.eigenvectors, cfg.num_eigenfunctions);
    } else {
        const auto spectrum = continuous::method3_solve(problem);
        report.eigenvalues = spectrum.eigenvalues;
        report.padded_eigenfunctions =
            pad_vectors(problem.grid(), spectrum.eigenvectors, cfg.num_eigenfunctions);
    }
    emit_eigen_report(report, cfg, out);
    return 0;
}

inline GridFunction load_initial_profile(const std::string& path, const UniformGrid& grid) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("initial profile: cannot open '" + path + "'");
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream row(line);
        std::string probe;
        if (!(row >> probe) || probe[0] == '#') continue;
        double v;
        if (!(std::istringstream(probe) >> v))
            throw std::runtime_error("initial profile: " + path + ":" + std::to_string(line_no) +
                                     ": expected one numeric value");
        values.push_back(v);
    }
    return GridFunction(grid, std::move(values));
}

inline int run_diffusion(const RunConfig& cfg, std::ostream& out) {
    const auto spatial = make_continuous_problem(cfg);
    const auto& grid = spatial.grid();
    GridFunction initial =
        cfg.initial_file.empty()
            ? GridFunction::sample(grid,
                                   [&](double x) {
                                       constexpr double kPi = 3.141592653589793238462643383279502884;
                                       return std::sin(kPi * (x - grid.a()) / (grid.b() - grid.a()));
                                   })
            : load_initial_profile(cfg.initial_file, grid);
    if (cfg.initial_file.empty()) {
        // force exact boundary zeros on the default sine profile
        auto values = std::vector<double>(initial.values().begin(), initial.values().end());
        values.front() = 0.0;
        values.back() = 0.0;
        initial = GridFunction(grid, std::move(values));
    }

    const diffusion::DiffusionProblem problem(cfg.beta, spatial, std::move(initial), cfg.times,
                                              cfg.trunc_k);
    const auto field = diffusion::solve_diffusion(problem);

    std::string csv = "x";
    for (double t : field.times) csv += ",u[t=" + format_value(t) + "]";
    csv += "\n";
    for (int j = 0; j < grid.nodes(); ++j) {
        csv += format_value(grid.node(j));
        for (std::size_t ti = 0; ti < field.times.size(); ++ti)
            csv += "," + format_value(field.values[ti][static_cast<std::size_t>(j)]);
        csv += "\n";
    }

    const std::string path = resolve_output_path(cfg.output_path);
    if (path.empty()) {
        out << csv;
        return 0;
    }
    if (cfg.output_format == OutputFormat::csv) {
        write_file(path, csv);
    } else {
        std::vector<double> xs(static_cast<std::size_t>(grid.nodes()));
        for (int j = 0; j < grid.nodes(); ++j) xs[static_cast<std::size_t>(j)] = grid.node(j);
        std::string json = "{\n  \"command\": \"diffusion\",\n  \"alpha\": " +
                           format_value(cfg.alpha) + ",\n  \"beta\": " + format_value(cfg.beta) +
                           ",\n  \"times\": " + json_number_array(field.times) +
                           ",\n  \"x\": " + json_number_array(xs) + ",\n  \"u\": [";
        for (std::size_t ti = 0; ti < field.values.size(); ++ti) {
            if (ti > 0) json += ",";
            json += "\n    " + json_number_array(field.values[ti]);
        }
        json += "\n  ]\n}\n";
        write_file(path, json);
    }
    out << "diffusion: wrote " << field.times.size() << " time slices to " << path << "\n";
    return 0;
}

}  // namespace detail

// Execute one configured command.  Returns 0 on success; solver and input
// errors surface as exceptions for the caller to report (the CLI maps them to
// exit status 1).
inline int run(const RunConfig& cfg, std::ostream& out) {
    switch (cfg.command) {
        case Command::coeffs: return detail::run_coeffs(cfg, out);
        case Command::discrete_sl: return detail::run_discrete(cfg, out);
        case Command::continuous_sl: return detail::run_continuous(cfg, out);
        case Command::diffusion: return detail::run_diffusion(cfg, out);
    }
    throw std::logic_error("run: unknown command");
}

}  // namespace fracsl::io
