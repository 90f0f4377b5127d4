// Copyright 2026 The FisherLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fisherlab/cli.hpp"

#include "fisherlab/bench.hpp"
#include "fisherlab/closed_forms.hpp"
#include "fisherlab/fisher.hpp"
#include "fisherlab/parallel.hpp"
#include "fisherlab/pipeline.hpp"
#include "fisherlab/probe_optimizer.hpp"
#include "fisherlab/validation.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <regex>
#include <stdexcept>

namespace fisherlab::cli {

namespace {

constexpr int kFigureHbOrder = 10;
constexpr int kFigurePhotons = 20;

class UsageError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

} // namespace

double parse_decimal(std::string_view text) {
    static const std::regex pattern(R"([+-]?(\d+(\.\d*)?|\.\d+))");
    const std::string s(text);
    if(!std::regex_match(s, pattern)) throw UsageError("not a decimal number: '" + s + "'");
    return std::stod(s);
}

std::vector<double> parse_grid(std::string_view text) {
    std::vector<double> out;
    if(text.empty()) return out;
    const std::string s(text);
    if(s.find(':') != std::string::npos) {
        const auto a = s.find(':');
        const auto b = s.find(':', a + 1);
        if(b == std::string::npos) throw UsageError("range grid must be lo:hi:count, got '" + s + "'");
        const double lo = parse_decimal(s.substr(0, a));
        const double hi = parse_decimal(s.substr(a + 1, b - a - 1));
        const double count = parse_decimal(s.substr(b + 1));
        if(count < 0 || count != std::floor(count)) throw UsageError("grid count must be a non-negative integer");
        if(hi < lo) throw UsageError("range grid must satisfy lo <= hi");
        return bench::uniform_grid(lo, hi, static_cast<int>(count));
    }
    std::size_t start = 0;
    while(start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto piece = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        out.push_back(parse_decimal(piece));
        if(comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::optional<Quantity> parse_quantity(std::string_view name) {
    static const std::pair<std::string_view, Quantity> table[] = {
        {"qfi", Quantity::qfi},           {"cfi", Quantity::cfi},         {"ratio", Quantity::ratio},
        {"threshold", Quantity::threshold}, {"feasibility", Quantity::feasibility}, {"figure2", Quantity::figure2},
        {"figure3", Quantity::figure3},   {"figure4", Quantity::figure4},
    };
    for(const auto &[key, q] : table)
        if(key == name) return q;
    return std::nullopt;
}

namespace {

std::string_view quantity_name(Quantity q) {
    switch(q) {
    case Quantity::qfi: return "qfi";
    case Quantity::cfi: return "cfi";
    case Quantity::ratio: return "ratio";
    case Quantity::threshold: return "threshold";
    case Quantity::feasibility: return "feasibility";
    case Quantity::figure2: return "figure2";
    case Quantity::figure3: return "figure3";
    case Quantity::figure4: return "figure4";
    }
    return "?";
}

void check_sorted_unit(const std::vector<double> &grid, const char *name, bool unit) {
    if(!std::is_sorted(grid.begin(), grid.end())) throw UsageError(std::string(name) + " grid must be sorted");
    if(unit)
        for(double v : grid)
            if(v < 0.0 || v > 1.0) throw UsageError(std::string(name) + " values must lie in [0, 1]");
}

} // namespace

void SweepSpec::validate() const {
    check_sorted_unit(phi, "phi", false);
    check_sorted_unit(eta_p, "eta-p", true);
    check_sorted_unit(eta, "eta", true);
    check_sorted_unit(eta_d, "eta-d", true);
    if(!std::is_sorted(n_values.begin(), n_values.end())) throw UsageError("n grid must be sorted");
    for(int n : n_values)
        if(n < 1 || n > 10) throw UsageError("N must lie in [1, 10]");
    if((quantity == Quantity::cfi || quantity == Quantity::ratio || quantity == Quantity::threshold ||
        quantity == Quantity::feasibility) &&
       std::any_of(n_values.begin(), n_values.end(), [](int n) { return n > 6; }))
        throw UsageError("pipeline quantities support N in [1, 6]");
    if(quantity == Quantity::threshold && !bench::parse_axis(axis)) throw UsageError("unknown axis '" + axis + "'");
    if(starts < 1) throw UsageError("--starts must be positive");
}

Table evaluate_sweep(const SweepSpec &spec) {
    spec.validate();
    const int threads = resolve_threads(spec.threads);
    Table table;
    // Each job fills one pre-allocated row; order follows the grid nesting.
    std::vector<std::function<std::vector<Cell>()>> jobs;
    auto feasibility_rows = [&](int k, const std::vector<double> &ep, const std::vector<double> &e, const std::vector<double> &ed) {
        for(double a : ep)
            for(double b : e)
                for(double c : ed)
                    jobs.emplace_back([k, a, b, c] {
                        const auto r = bench::advantage_ratio(k, a, b, c);
                        return std::vector<Cell>{static_cast<long long>(k), a, b, c, r.ratio, r.ratio >= 1.0};
                    });
    };

    switch(spec.quantity) {
    case Quantity::qfi:
        table.columns = {"n", "eta", "qfi"};
        for(int n : spec.n_values)
            for(double e : spec.eta)
                jobs.emplace_back([n, e] { return std::vector<Cell>{static_cast<long long>(n), e, bench::hb_lossy_qfi(n, e)}; });
        break;
    case Quantity::cfi:
        table.columns = {"n", "phi", "eta_p", "eta", "eta_d", "cfi"};
        for(int n : spec.n_values)
            for(double p : spec.phi)
                for(double a : spec.eta_p)
                    for(double b : spec.eta)
                        for(double c : spec.eta_d)
                            jobs.emplace_back([n, p, a, b, c] {
                                optics::PipelineConfig cfg;
                                cfg.n = n;
                                cfg.phi = p;
                                cfg.eta_p = a;
                                cfg.eta = b;
                                cfg.eta_d = c;
                                return std::vector<Cell>{static_cast<long long>(n), p, a, b, c,
                                                         fisher::cfi(pipeline::run_pipeline(cfg))};
                            });
        break;
    case Quantity::ratio:
        table.columns = {"k", "eta_p", "eta", "eta_d", "best_phase", "f_best", "f_sql", "ratio"};
        for(int k : spec.n_values)
            for(double a : spec.eta_p)
                for(double b : spec.eta)
                    for(double c : spec.eta_d)
                        jobs.emplace_back([k, a, b, c] {
                            const auto r = bench::advantage_ratio(k, a, b, c);
                            return std::vector<Cell>{static_cast<long long>(k), a, b, c, r.best_phase, r.f_best, r.f_sql, r.ratio};
                        });
        break;
    case Quantity::threshold: {
        table.columns = {"k", "axis", "eta_p", "eta", "eta_d", "threshold", "found"};
        const auto axis = *bench::parse_axis(spec.axis);
        // The scanned axis's own grid is ignored; its column holds the threshold.
        const std::vector<double> one{1.0};
        const auto &gp = axis == bench::Axis::eta_p ? one : spec.eta_p;
        const auto &ge = axis == bench::Axis::eta ? one : spec.eta;
        const auto &gd = axis == bench::Axis::eta_d ? one : spec.eta_d;
        for(int k : spec.n_values)
            for(double a : gp)
                for(double b : ge)
                    for(double c : gd)
                        jobs.emplace_back([k, a, b, c, axis] {
                            const auto r = bench::threshold_search(k, axis, {a, b, c});
                            const double t = r.threshold.value_or(std::nan(""));
                            std::vector<Cell> row{static_cast<long long>(k), std::string(bench::axis_name(axis)), a, b, c};
                            row[2 + static_cast<int>(axis)] = t;
                            row.emplace_back(t);
                            row.emplace_back(r.threshold.has_value());
                            return row;
                        });
        break;
    }
    case Quantity::feasibility:
        table.columns = {"k", "eta_p", "eta", "eta_d", "ratio", "feasible"};
        for(int k : spec.n_values) feasibility_rows(k, spec.eta_p, spec.eta, spec.eta_d);
        break;
    case Quantity::figure2:
        table.columns = {"eta", "sql", "hb10", "noon20", "optimal20"};
        for(double e : spec.eta)
            jobs.emplace_back([e, &spec] {
                probe::ProbeOptions opt;
                opt.starts = spec.starts;
                opt.seed = spec.seed;
                const auto best = probe::optimal_probe_qfi(kFigurePhotons, e, opt);
                return std::vector<Cell>{e, bench::sql(kFigureHbOrder, e, 1.0), bench::hb_lossy_qfi(kFigureHbOrder, e),
                                         bench::noon_lossy_qfi(kFigurePhotons, e), best.qfi};
            });
        break;
    case Quantity::figure3:
        table.columns = {"k", "eta_p", "eta", "eta_d", "ratio", "feasible"};
        feasibility_rows(2, spec.eta_p, spec.eta, spec.eta_d);
        break;
    case Quantity::figure4:
        table.columns = {"k", "eta_p", "eta", "eta_d", "ratio", "feasible"};
        feasibility_rows(1, spec.eta_p, spec.eta, spec.eta_d);
        feasibility_rows(3, spec.eta_p, spec.eta, spec.eta_d);
        break;
    }
    table.rows.resize(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t i) { table.rows[i] = jobs[i](); });
    return table;
}

namespace {

std::string cell_text(const Cell &c) {
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr(std::is_same_v<T, double>) return format_number(v);
            else if constexpr(std::is_same_v<T, long long>) return std::to_string(v);
            else if constexpr(std::is_same_v<T, bool>) return v ? "1" : "0";
            else return v;
        },
        c);
}

} // namespace

std::string to_csv(const Table &table) {
    std::string out;
    for(std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
    out += '\n';
    for(const auto &row : table.rows) {
        for(std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
        out += '\n';
    }
    return out;
}

std::string to_json(const Table &table, Quantity quantity) {
    nlohmann::ordered_json doc;
    doc["quantity"] = quantity_name(quantity);
    doc["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for(const auto &row : table.rows) {
        auto obj = nlohmann::ordered_json::object();
        for(std::size_t i = 0; i < row.size(); ++i) {
            std::visit(
                [&](const auto &v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr(std::is_same_v<T, double>) {
                        if(std::isfinite(v)) obj[table.columns[i]] = v;
                        else obj[table.columns[i]] = nullptr;
                    } else {
                        obj[table.columns[i]] = v;
                    }
                },
                row[i]);
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

namespace {

struct CommonFlags {
    std::string n = "1", k, phi = "0.7853981633974483", eta_p = "1", eta = "1", eta_d = "1";
    std::string axis = "eta_p";
    int threads = 0;
    unsigned long long seed = 0;
    int starts = 20;
};

int parse_int_flag(const std::string &text, const char *name) {
    const double v = parse_decimal(text);
    if(v != std::floor(v)) throw UsageError(std::string(name) + " must be an integer");
    return static_cast<int>(v);
}

void print_value(std::ostream &out, std::string_view name, double value, std::string_view engine) {
    out << fmt::format("{} = {:.15g}    [engine: {}]\n", name, value, engine);
}

int cmd_eval(const std::string &quantity, const CommonFlags &f, std::ostream &out) {
    const int n = parse_int_flag(f.n, "--n");
    const int k = f.k.empty() ? n : parse_int_flag(f.k, "--k");
    const double phi = parse_decimal(f.phi);
    const double eta_p = parse_decimal(f.eta_p), eta = parse_decimal(f.eta), eta_d = parse_decimal(f.eta_d);
    for(double v : {eta_p, eta, eta_d})
        if(v < 0.0 || v > 1.0) throw UsageError("efficiencies must lie in [0, 1]");
    optics::PipelineConfig cfg;
    cfg.n = n;
    cfg.phi = phi;
    cfg.eta_p = eta_p;
    cfg.eta = eta;
    cfg.eta_d = eta_d;

    if(quantity == "qfi") {
        print_value(out, "qfi", bench::hb_lossy_qfi(n, eta), "block-diagonal QFI of HB(N) after one-arm loss");
    } else if(quantity == "qfi-general") {
        print_value(out, "qfi", bench::hb_lossy_qfi_general(n, eta), "eigendecomposition QFI of flattened lossy HB(N)");
    } else if(quantity == "cfi") {
        print_value(out, "cfi", fisher::cfi(pipeline::run_pipeline(cfg)), "pipeline simulation, sum (dp)^2/p");
    } else if(quantity == "sql") {
        print_value(out, "sql", bench::sql(k, eta, eta_d), "2 k eta eta_d");
    } else if(quantity == "ratio") {
        const auto r = bench::advantage_ratio(k, eta_p, eta, eta_d);
        print_value(out, "ratio", r.ratio, "max over phi of pipeline CFI / SQL");
        print_value(out, "f_best", r.f_best, "pipeline phase series, grid + golden section");
        print_value(out, "f_sql", r.f_sql, "2 k eta eta_d");
        print_value(out, "best_phase", r.best_phase, "argmax over phi in (0, pi/2)");
    } else if(quantity == "threshold") {
        const auto axis = bench::parse_axis(f.axis);
        if(!axis) throw UsageError("unknown axis '" + f.axis + "'");
        const auto r = bench::threshold_search(k, *axis, {eta_p, eta, eta_d});
        if(!r.threshold) {
            out << fmt::format("threshold = none    [engine: ratio at {} = 1 is {:.15g} < 1; no crossing]\n",
                               bench::axis_name(*axis), r.ratio_at_one);
        } else {
            print_value(out, "threshold", *r.threshold, "bisection on advantage ratio >= 1");
        }
    } else if(quantity == "noon") {
        print_value(out, "qfi", bench::noon_lossy_qfi(n, eta), "eigendecomposition QFI of lossy N00N state");
    } else if(quantity == "optimal") {
        probe::ProbeOptions opt;
        opt.seed = f.seed;
        opt.starts = f.starts;
        opt.threads = resolve_threads(f.threads);
        const auto r = probe::optimal_probe_qfi(n, eta, opt);
        print_value(out, "qfi", r.qfi, "multi-start Nelder-Mead over real probe coefficients, general QFI");
        std::string coeffs;
        for(double c : r.coefficients) coeffs += (coeffs.empty() ? "" : ",") + fmt::format("{:.10g}", c);
        out << "coefficients = " << coeffs << "\n";
        print_value(out, "start_spread", r.spread, "max - min over starts");
    } else if(quantity == "parity") {
        print_value(out, "parity", pipeline::parity_expectation(n, phi), "P_N(cos 2 phi)");
    } else if(quantity == "single-outcome") {
        print_value(out, "fi", pipeline::single_outcome_fi(n, phi), "binary outcome |N>|N>, p = P_N(cos phi)^2");
    } else if(quantity == "f1") {
        print_value(out, "f1", closed_forms::closed_form_f1(phi, eta_p, eta, eta_d), "closed form for N = 1");
    } else if(quantity == "distribution") {
        const auto d = pipeline::run_pipeline(cfg);
        for(const auto &[o, v] : d.entries())
            out << fmt::format("p[{},{}] = {:.15g}    dp = {:.15g}\n", o.m, o.n, v.probability, v.derivative);
    } else {
        throw UsageError("unknown quantity '" + quantity + "'");
    }
    return kSuccess;
}

int cmd_sweep(const std::string &quantity, const std::string &output, const std::string &format, const CommonFlags &f,
              int resolution, std::ostream &out) {
    SweepSpec spec;
    const auto q = parse_quantity(quantity);
    if(!q) throw UsageError("unknown sweep quantity '" + quantity + "'");
    spec.quantity = *q;
    if(format == "csv") spec.format = Format::csv;
    else if(format == "json") spec.format = Format::json;
    else throw UsageError("unknown format '" + format + "'");
    const std::string n_text = f.k.empty() ? f.n : f.k;
    for(double v : parse_grid(n_text)) {
        if(v != std::floor(v)) throw UsageError("N values must be integers");
        spec.n_values.push_back(static_cast<int>(v));
    }
    spec.n_values.erase(spec.n_values.begin()); // drop the default
    spec.phi = parse_grid(f.phi);
    spec.eta_p = parse_grid(f.eta_p);
    spec.eta = parse_grid(f.eta);
    spec.eta_d = parse_grid(f.eta_d);
    spec.axis = f.axis;
    spec.threads = f.threads;
    spec.seed = f.seed;
    spec.starts = f.starts;
    spec.output = output;
    // Figure quantities default to full grids unless the caller narrowed them.
    if(spec.quantity == Quantity::figure3 || spec.quantity == Quantity::figure4) {
        const auto axis = bench::uniform_grid(0.0, 1.0, resolution);
        if(f.eta_p == "1") spec.eta_p = axis;
        if(f.eta == "1") spec.eta = axis;
        if(f.eta_d == "1") spec.eta_d = axis;
    }
    if(spec.quantity == Quantity::figure2 && f.eta == "1") spec.eta = bench::uniform_grid(0.0, 1.0, 21);

    const auto table = evaluate_sweep(spec);
    const std::string text = spec.format == Format::csv ? to_csv(table) : to_json(table, spec.quantity);
    if(spec.output.empty()) {
        out << text;
    } else {
        std::ofstream file(spec.output, std::ios::binary | std::ios::trunc);
        if(!file) throw std::runtime_error("cannot open output file '" + spec.output + "'");
        file << text;
        if(!file) throw std::runtime_error("failed writing output file '" + spec.output + "'");
    }
    return kSuccess;
}

int cmd_validate(bool strict_p2, const CommonFlags &f, std::ostream &out) {
    validation::Options opt;
    opt.strict_p2 = strict_p2;
    opt.seed = f.seed;
    opt.threads = resolve_threads(f.threads);
    const auto checks = validation::run_all(opt);
    bool ok = true;
    for(const auto &c : checks) {
        const char *status = c.passed ? "PASS" : (c.mandatory ? "FAIL" : "REPORT");
        out << fmt::format("[{}] {:<38} metric={:.3e} tol={:.1e}{}  {}\n", status, c.name, c.metric, c.tolerance,
                           c.mandatory ? "" : " (non-fatal)", c.detail);
        if(c.mandatory && !c.passed) ok = false;
    }
    out << (ok ? "validation: all mandatory checks passed\n" : "validation: mandatory check failed\n");
    return ok ? kSuccess : kValidation;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"fisherlab: Fisher information of twin-Fock interferometry with imperfect sources, loss and detectors"};
    app.require_subcommand(1);
    CommonFlags flags;
    auto add_common = [&flags](CLI::App *sub) {
        sub->add_option("--n", flags.n, "photons per input mode (HB order); sweeps accept a grid");
        sub->add_option("--k", flags.k, "HB order for sql/ratio/threshold (defaults to --n)");
        sub->add_option("--phi", flags.phi, "phase in radians");
        sub->add_option("--eta-p", flags.eta_p, "preparation efficiency");
        sub->add_option("--eta", flags.eta, "transmissivity of the phase arm");
        sub->add_option("--eta-d", flags.eta_d, "detector efficiency");
        sub->add_option("--axis", flags.axis, "threshold axis: eta_p, eta or eta_d");
        sub->add_option("--threads", flags.threads, "worker threads (default: FISHERLAB_THREADS or all cores)");
        sub->add_option("--seed", flags.seed, "optimizer / validation seed");
        sub->add_option("--starts", flags.starts, "optimizer starts");
    };

    std::string quantity;
    auto *eval = app.add_subcommand("eval", "evaluate a single quantity");
    eval->add_option("--quantity", quantity,
                     "qfi, qfi-general, cfi, sql, ratio, threshold, noon, optimal, parity, single-outcome, f1, distribution")
        ->required();
    add_common(eval);

    std::string sweep_quantity, output, format = "csv";
    int resolution = 21;
    auto *sweep = app.add_subcommand("sweep", "evaluate a quantity over parameter grids (lists 'a,b,c' or ranges 'lo:hi:count')");
    sweep->add_option("--quantity", sweep_quantity, "qfi, cfi, ratio, threshold, feasibility, figure2, figure3, figure4")
        ->required();
    sweep->add_option("--output", output, "output path (default: standard output)");
    sweep->add_option("--format", format, "csv or json");
    sweep->add_option("--resolution", resolution, "points per axis for figure3/figure4")->check(CLI::Range(2, 101));
    add_common(sweep);

    bool strict_p2 = false;
    auto *validate = app.add_subcommand("validate", "cross-check closed forms against the simulation");
    validate->add_flag("--strict-p2", strict_p2, "treat N = 2 table discrepancies as failures");
    add_common(validate);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch(const CLI::CallForHelp &) {
        out << app.help();
        return kSuccess;
    } catch(const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch(const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if(eval->parsed()) return cmd_eval(quantity, flags, out);
        if(sweep->parsed()) return cmd_sweep(sweep_quantity, output, format, flags, resolution, out);
        return cmd_validate(strict_p2, flags, out);
    } catch(const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch(const fisher::SingularityError &e) {
        err << "numerical diagnostic: " << e.what() << "\n";
        return kNumerical;
    } catch(const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch(const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch(const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace fisherlab::cli
