#include "gaia_cli/commands.hpp"

#include "gaia/analysis.hpp"
#include "gaia/error.hpp"
#include "gaia/exact_oracle.hpp"
#include "gaia/gaia_grid.hpp"
#include "gaia/gaia_lzsm.hpp"
#include "gaia/legacy_wkb.hpp"
#include "gaia/parallel.hpp"
#include "gaia_cli/csv.hpp"
#include "gaia_cli/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>

namespace gaia::cli {

namespace {

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double x = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(x)) throw std::invalid_argument(s);
        return x;
    } catch (const std::exception&) {
        throw UsageError("invalid number '" + s + "' in " + what);
    }
}

int parse_int(const std::string& s, const std::string& what) {
    int x = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw UsageError("invalid integer '" + s + "' in " + what);
    }
    return x;
}

// Output stream: a file, or stdout for "" / "-".
class Output {
public:
    explicit Output(const std::string& path) : path_(path) {
        if (!to_stdout()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw std::runtime_error("cannot open output '" + path + "'");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    bool to_stdout() const { return path_.empty() || path_ == "-"; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
};

std::string fmt(double x) { return format_number(x); }

void write_smatrix(CsvWriter& csv, const Matrix& s) {
    csv.row({"row", "col", "re", "im", "abs2"});
    for (Eigen::Index r = 0; r < s.rows(); ++r) {
        for (Eigen::Index c = 0; c < s.cols(); ++c) {
            csv.row({std::to_string(r + 1), std::to_string(c + 1), fmt(s(r, c).real()),
                     fmt(s(r, c).imag()), fmt(std::norm(s(r, c)))});
        }
    }
}

ModelSpec require_model(const RunSpec& spec) {
    if (spec.model_path.empty()) throw UsageError("--model is required");
    return load_model(spec.model_path);
}

void check_sweep(const RunSpec& spec, const ModelSpec& model) {
    if (!spec.sweep) return;
    const auto names = sweep_parameters(model);
    if (std::find(names.begin(), names.end(), spec.sweep->name) == names.end()) {
        std::string list;
        for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
        throw UsageError("sweep parameter '" + spec.sweep->name + "' not valid for " + model.type +
                         " models (allowed: " + list + ")");
    }
}

int initial_index(const RunSpec& spec, int dim) {
    if (spec.initial < 1 || spec.initial > dim) {
        throw UsageError("--initial must be in 1.." + std::to_string(dim));
    }
    return spec.initial - 1;
}

Sweep to_sweep(const SweepSpec& s) { return Sweep{s.start, s.stop, s.count}; }

int cmd_grid(const RunSpec& spec, std::ostream& log) {
    const ModelSpec ms = require_model(spec);
    const GridModel model = make_grid(ms);
    Matrix s;
    if (spec.method == "gaia") {
        s = smatrix_grid(model);
    } else if (spec.method == "legacy") {
        const LegacyResult r = smatrix_legacy(model);
        for (const auto& w : r.warnings) log << "warning: " << w << "\n";
        s = r.s;
    } else if (spec.method == "aia") {
        s = smatrix_aia(model, spec.tol.value_or(1e-12), spec.window);
    } else if (spec.method == "closed") {
        s = s4_closed_form(model);
    } else {
        throw UsageError("--method must be gaia, legacy, aia or closed");
    }
    Output out(spec.out_path);
    CsvWriter csv(out.stream());
    write_smatrix(csv, s);
    return kExitOk;
}

int cmd_lzsm(const RunSpec& spec, std::ostream& log) {
    const ModelSpec ms = require_model(spec);
    const int crossings = spec.crossings.value_or(default_crossings(ms));
    const LzsmModel model = make_lzsm(ms, crossings);
    const int init = initial_index(spec, model.dim());
    const LzsmPropagation prop = propagate_lzsm(model, Vector::Unit(model.dim(), init), crossings);

    Output out(spec.out_path);
    CsvWriter csv(out.stream());
    std::vector<std::string> header = {"time"};
    for (int k = 1; k <= model.dim(); ++k) header.push_back("P_" + std::to_string(k));
    csv.row(header);
    for (std::size_t r = 0; r < prop.trace.times.size(); ++r) {
        std::vector<std::string> fields = {fmt(prop.trace.times[r])};
        for (double p : prop.trace.probabilities[r]) fields.push_back(fmt(p));
        csv.row(fields);
    }
    if (!out.to_stdout()) {
        const std::string spath = out.path() + ".smatrix.csv";
        std::ofstream sfile(spath, std::ios::binary);
        if (!sfile) throw std::runtime_error("cannot open output '" + spath + "'");
        CsvWriter scsv(sfile);
        write_smatrix(scsv, prop.s);
    }
    log << "info: final P_" << spec.initial << " = "
        << format_number(prop.trace.probabilities.back()[init]) << "\n";
    return kExitOk;
}

OracleOptions oracle_options(const RunSpec& spec, double default_tol) {
    OracleOptions o;
    o.tolerance = spec.tol.value_or(default_tol);
    if (spec.max_steps) {
        if (*spec.max_steps < 1) throw UsageError("--max-steps must be >= 1");
        o.max_steps = *spec.max_steps;
    }
    o.window = spec.window;
    return o;
}

void append_levels(std::vector<std::string>& header, const char* prefix, int dim) {
    for (int l = 1; l <= dim; ++l) header.push_back(std::string(prefix) + std::to_string(l));
}

int cmd_compare_grid(const RunSpec& spec, const ModelSpec& ms, std::ostream& log) {
    const int dim = 2 * ms.n;
    const int init = initial_index(spec, dim);
    const SweepSpec sw = spec.sweep.value_or(SweepSpec{"eta", ms.eta, ms.eta, 1});
    const GridFamily family = [&](double x) { return make_grid(with_parameter(ms, sw.name, x)); };
    family(sw.start);  // validate before fanning out
    const auto rows = compare_gaia_oracle(family, to_sweep(sw), init, oracle_options(spec, 1e-10));

    Output out(spec.out_path);
    CsvWriter csv(out.stream());
    std::vector<std::string> header = {sw.name, "margin", "red_region"};
    append_levels(header, "P_gaia_", dim);
    append_levels(header, "P_exact_", dim);
    header.insert(header.end(), {"max_diff", "status"});
    csv.row(header);
    bool failed = false;
    for (const auto& row : rows) {
        failed = failed || !row.ok;
        std::vector<std::string> f = {fmt(row.parameter), fmt(row.margin),
                                      row.margin < kValidityThreshold ? "1" : "0"};
        for (double p : row.p_gaia) f.push_back(fmt(p));
        for (double p : row.p_exact) f.push_back(fmt(p));
        f.push_back(fmt(row.max_diff));
        f.push_back(row.ok ? "OK" : "ERROR");
        csv.row(f);
        if (!row.ok) {
            log << "error: StepLimitExceeded: " << row.error << " at " << sw.name << "="
                << format_number(row.parameter) << "\n";
        }
    }
    return failed ? kExitRuntime : kExitOk;
}

int cmd_compare_lzsm(const RunSpec& spec, const ModelSpec& ms, std::ostream& log) {
    const int crossings = spec.crossings.value_or(default_crossings(ms));
    const SweepSpec sw = spec.sweep.value_or(SweepSpec{"eta", ms.eta, ms.eta, 1});
    const Sweep sweep = to_sweep(sw);
    const int dim = make_lzsm(with_parameter(ms, sw.name, sw.start), crossings).dim();
    const int init = initial_index(spec, dim);
    if (spec.window) throw UsageError("--window does not apply to LZSM comparisons");
    const OracleOptions opts = oracle_options(spec, 1e-9);

    struct Block {
        std::vector<TraceCompareRow> rows;
        std::string error;
    };
    const auto blocks = parallel_map<Block>(static_cast<std::size_t>(sw.count), [&](std::size_t k) {
        Block b;
        const LzsmModel model =
            make_lzsm(with_parameter(ms, sw.name, sweep.at(static_cast<int>(k))), crossings);
        try {
            b.rows = compare_lzsm_oracle(model, crossings, init, opts);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::StepLimitExceeded) throw;
            b.error = e.what();
        }
        return b;
    });

    Output out(spec.out_path);
    CsvWriter csv(out.stream());
    std::vector<std::string> header = {sw.name, "time"};
    append_levels(header, "P_gaia_", dim);
    append_levels(header, "P_exact_", dim);
    header.insert(header.end(), {"max_diff", "status"});
    csv.row(header);
    bool failed = false;
    for (int k = 0; k < sw.count; ++k) {
        const Block& b = blocks[k];
        const std::string param = fmt(sweep.at(k));
        if (!b.error.empty()) {
            failed = true;
            std::vector<std::string> f(header.size(), "nan");
            f.front() = param;
            f.back() = "ERROR";
            csv.row(f);
            log << "error: StepLimitExceeded: " << b.error << " at " << sw.name << "="
                << format_number(sweep.at(k)) << "\n";
            continue;
        }
        for (const auto& row : b.rows) {
            std::vector<std::string> f = {param, fmt(row.time)};
            for (double p : row.p_gaia) f.push_back(fmt(p));
            for (double p : row.p_exact) f.push_back(fmt(p));
            f.push_back(fmt(row.max_diff));
            f.push_back("OK");
            csv.row(f);
        }
    }
    return failed ? kExitRuntime : kExitOk;
}

int cmd_compare(const RunSpec& spec, std::ostream& log) {
    const ModelSpec ms = require_model(spec);
    check_sweep(spec, ms);
    if (spec.sweep && spec.sweep->count < 1) throw UsageError("sweep count must be >= 1");
    return ms.is_grid() ? cmd_compare_grid(spec, ms, log) : cmd_compare_lzsm(spec, ms, log);
}

int cmd_interference(const RunSpec& spec, std::ostream& log) {
    const ModelSpec ms = require_model(spec);
    check_sweep(spec, ms);
    if (!spec.sweep) throw UsageError("interference needs --sweep");
    const SweepSpec sw = *spec.sweep;
    Output out(spec.out_path);
    CsvWriter csv(out.stream());

    if (ms.is_grid()) {
        const GridFamily family = [&](double x) { return make_grid(with_parameter(ms, sw.name, x)); };
        p34(family(sw.start));  // shape check
        csv.row({sw.name, "P_a", "P_b", "phase", "P_34"});
        for (double x : p34_zeros(family, to_sweep(sw))) {
            const GridModel m = family(x);
            const InterferenceReport r = p34(m);
            const double product = std::norm(smatrix_grid(m)(2, 3));
            if (r.p34 > 1e-10 || product > 1e-10) {
                log << "warning: dropped zero at " << sw.name << "=" << format_number(x)
                    << " (P_34 = " << format_number(std::max(r.p34, product)) << ")\n";
                continue;
            }
            csv.row({fmt(x), fmt(r.p_a), fmt(r.p_b), fmt(r.phase), fmt(r.p34)});
        }
        return kExitOk;
    }

    if (sw.name != "eta") throw UsageError("destructive-interference search sweeps eta only");
    const int crossings = spec.crossings.value_or(default_crossings(ms));
    const double tol = spec.tol.value_or(kDestructiveTolerance);
    const LzsmFamily family = [&](double eta) {
        return make_lzsm(with_parameter(ms, "eta", eta), crossings);
    };
    family(sw.start);
    csv.row({"eta", "theta_sum_1", "theta_sum_2", "residual_1", "residual_2", "abs_S11"});
    for (double eta : solve_destructive(family, sw.start, sw.stop, tol, std::max(sw.count, 3))) {
        const DestructiveReport r = destructive_condition(family(eta), tol);
        if (!r.holds) {
            log << "warning: dropped eta=" << format_number(eta) << " (condition fails on recheck)\n";
            continue;
        }
        csv.row({fmt(eta), fmt(r.theta_sums[0]), fmt(r.theta_sums[1]), fmt(r.residuals[0]),
                 fmt(r.residuals[1]), fmt(std::abs(r.s11))});
    }
    return kExitOk;
}

// Random grid model with offsets spread over [0, N) and kappa <= kappa_max.
int cmd_random(const RunSpec& spec, std::ostream&) {
    if (spec.random_n < 1) throw UsageError("--levels must be >= 1");
    if (!(spec.random_kappa_max >= 0.0)) throw UsageError("--kappa-max must be >= 0");
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ModelSpec ms;
    ms.type = "grid";
    ms.n = spec.random_n;
    ms.v = 0.5 + unit(rng);
    ms.eta = 50.0 + 100.0 * unit(rng);
    for (int k = 0; k < ms.n; ++k) ms.a.push_back(k + 0.8 * unit(rng));
    ms.b = Matrix::Zero(ms.n, ms.n);
    for (int i = 0; i < ms.n; ++i) {
        for (int m = 0; m < ms.n; ++m) {
            const double kap = spec.random_kappa_max * unit(rng);
            const double mag = std::sqrt(2.0 * ms.v * kap);
            ms.b(i, m) = std::polar(mag, 2.0 * kPi * unit(rng));
        }
    }
    make_grid(ms);
    Output out(spec.out_path);
    out.stream() << to_json(ms).dump(2) << "\n";
    return kExitOk;
}

}  // namespace

SweepSpec parse_sweep(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--sweep must look like NAME=A:B:N");
    SweepSpec s;
    s.name = text.substr(0, eq);
    const std::string rest = text.substr(eq + 1);
    const auto c1 = rest.find(':');
    const auto c2 = (c1 == std::string::npos) ? c1 : rest.find(':', c1 + 1);
    if (c2 == std::string::npos) throw UsageError("--sweep must look like NAME=A:B:N");
    s.start = parse_double(rest.substr(0, c1), "--sweep");
    s.stop = parse_double(rest.substr(c1 + 1, c2 - c1 - 1), "--sweep");
    s.count = parse_int(rest.substr(c2 + 1), "--sweep");
    if (s.count < 1) throw UsageError("sweep count must be >= 1");
    return s;
}

Window parse_window(const std::string& text) {
    const auto c = text.find(':');
    if (c == std::string::npos) throw UsageError("--window must look like A:B");
    Window w{parse_double(text.substr(0, c), "--window"), parse_double(text.substr(c + 1), "--window")};
    if (!(w.t_initial < w.t_final)) throw UsageError("--window needs A < B");
    return w;
}

int run(const RunSpec& spec, std::ostream& log) {
    if (spec.command == "grid") return cmd_grid(spec, log);
    if (spec.command == "lzsm") return cmd_lzsm(spec, log);
    if (spec.command == "compare") return cmd_compare(spec, log);
    if (spec.command == "interference") return cmd_interference(spec, log);
    if (spec.command == "random") return cmd_random(spec, log);
    throw UsageError("unknown command '" + spec.command + "'");
}

int run_guarded(const RunSpec& spec, std::ostream& log) {
    try {
        return run(spec, log);
    } catch (const UsageError& e) {
        log << "error: Usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        log << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return is_validation_error(e.code()) ? kExitValidation : kExitRuntime;
    } catch (const std::exception& e) {
        log << "error: Runtime: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace gaia::cli
