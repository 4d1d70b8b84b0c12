#include "dce/cli.hpp"

#include "dce/errors.hpp"
#include "dce/model.hpp"
#include "dce/observables.hpp"
#include "dce/photon_pdf.hpp"
#include "dce/propagator.hpp"
#include "dce/regimes.hpp"
#include "dce/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

namespace dce::cli {

namespace {

constexpr const char* kGrammar =
    "usage: dce <evolve|pdf|regime|map|validate> [--flag value]...\n"
    "  common:   --epsilon E[,E...] --g G[,G...] --kappa K[,K...] --out PATH --format csv|json\n"
    "            --precision 6..17 --config FILE --threads N\n"
    "  evolve:   --tmax T --steps N            (grid t_k = k T / N, k = 0..N)\n"
    "  pdf:      --t T [--mmax M]\n"
    "  regime:   [--beta B]                    (defaults to epsilon / 4)\n"
    "  map:      --beta B --kappa-min --kappa-max --g-min --g-max --nx --ny (ranges in units of beta)\n"
    "  validate: run the acceptance checks and print a pass/fail table\n";

// Rows of numbers under named columns; integral values print without a
// decimal point.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string command_name(Command c)
{
    switch (c) {
    case Command::evolve:
        return "evolve";
    case Command::pdf:
        return "pdf";
    case Command::regime:
        return "regime";
    case Command::map:
        return "map";
    case Command::validate:
        return "validate";
    }
    return "?";
}

nlohmann::json json_number(double v, int precision)
{
    if (!std::isfinite(v)) {
        return nullptr;
    }
    if (v == std::trunc(v) && std::abs(v) < 9.0e15) {
        return static_cast<std::int64_t>(v);
    }
    return std::stod(format_number(v, precision));
}

nlohmann::json config_json(const RunConfig& cfg)
{
    nlohmann::json j;
    j["command"] = command_name(cfg.command);
    j["epsilon"] = cfg.epsilon;
    j["g"] = cfg.g;
    j["kappa"] = cfg.kappa;
    j["beta"] = cfg.beta ? nlohmann::json(*cfg.beta) : nlohmann::json(nullptr);
    j["tmax"] = cfg.t_max;
    j["steps"] = cfg.steps;
    j["t"] = cfg.t;
    j["mmax"] = cfg.m_max ? nlohmann::json(*cfg.m_max) : nlohmann::json(nullptr);
    j["kappa_range"] = {cfg.kappa_range.min, cfg.kappa_range.max};
    j["g_range"] = {cfg.g_range.min, cfg.g_range.max};
    j["nx"] = cfg.nx;
    j["ny"] = cfg.ny;
    j["format"] = cfg.format == OutputFormat::csv ? "csv" : "json";
    j["precision"] = cfg.precision;
    return j;
}

std::string render(const Table& table, const RunConfig& cfg)
{
    if (cfg.format == OutputFormat::json) {
        nlohmann::json data = nlohmann::json::array();
        for (const auto& row : table.rows) {
            nlohmann::json obj = nlohmann::json::object();
            for (std::size_t k = 0; k < table.columns.size(); ++k) {
                obj[table.columns[k]] = json_number(row[k], cfg.precision);
            }
            data.push_back(std::move(obj));
        }
        nlohmann::json doc;
        doc["config"] = config_json(cfg);
        doc["data"] = std::move(data);
        return doc.dump(2) + "\n";
    }
    std::string s;
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
        s += (k ? "," : "") + table.columns[k];
    }
    s += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) {
                s += ',';
            }
            s += format_number(row[k], cfg.precision);
        }
        s += '\n';
    }
    return s;
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out)
{
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw UsageError("cannot open output file '" + cfg.out + "'");
    }
    file << text;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn)
{
    unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(count);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

Table run_evolve(const RunConfig& cfg, std::ostream& err)
{
    if (!(cfg.t_max >= 0.0) || !std::isfinite(cfg.t_max)) {
        throw UsageError("--tmax must be finite and non-negative");
    }
    std::vector<ModelParams> sets;
    for (double e : cfg.epsilon) {
        for (double g : cfg.g) {
            for (double k : cfg.kappa) {
                sets.push_back(validate_params(e, g, k));
                if (sets.back().strong_modulation()) {
                    err << "warning: |epsilon| = " << std::abs(e) << " exceeds 0.1, outside the weak-modulation regime\n";
                }
            }
        }
    }
    std::vector<double> grid(cfg.steps + 1);
    for (std::size_t k = 0; k <= cfg.steps; ++k) {
        grid[k] = cfg.t_max * static_cast<double>(k) / static_cast<double>(cfg.steps);
    }
    if (cfg.t_max == 0.0) {
        grid.assign(1, 0.0);
    }

    const bool sweep = sets.size() > 1;
    std::vector<std::vector<std::vector<double>>> blocks(sets.size());
    parallel_for(sets.size(), cfg.threads, [&](std::size_t i) {
        const auto maps = evolve_series(sets[i], grid);
        auto& rows = blocks[i];
        rows.reserve(maps.size());
        for (const auto& map : maps) {
            const FieldMoments m = field_moments(map);
            const GaussianSummary s = gaussian_summary(m);
            std::vector<double> row;
            if (sweep) {
                row = {sets[i].epsilon(), sets[i].g(), sets[i].kappa()};
            }
            row.insert(row.end(),
                       {map.time, m.n_a, m.n_b, s.q_mandel, s.squeeze_s, s.delta, s.sigma_xx, s.sigma_pp, s.sigma_xp});
            rows.push_back(std::move(row));
        }
    });

    Table table;
    if (sweep) {
        table.columns = {"epsilon", "g", "kappa"};
    }
    for (const char* c : {"t", "n_a", "n_b", "Q", "S", "delta", "sigma_xx", "sigma_pp", "sigma_xp"}) {
        table.columns.emplace_back(c);
    }
    for (auto& block : blocks) {
        for (auto& row : block) {
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

Table run_pdf(const RunConfig& cfg)
{
    if (cfg.epsilon.size() != 1 || cfg.g.size() != 1 || cfg.kappa.size() != 1) {
        throw UsageError("pdf takes a single parameter set");
    }
    if (!(cfg.t >= 0.0) || !std::isfinite(cfg.t)) {
        throw UsageError("--t must be finite and non-negative");
    }
    const auto params = validate_params(cfg.epsilon[0], cfg.g[0], cfg.kappa[0]);
    const auto summary = gaussian_summary(moments_at(params.couplings(), cfg.t));
    const auto dist = pdf_exact(summary, cfg.m_max);
    Table table{{"m", "f"}, {}};
    for (std::size_t m = 0; m < dist.probs.size(); ++m) {
        table.rows.push_back({static_cast<double>(m), dist.probs[m]});
    }
    return table;
}

Couplings regime_couplings(const RunConfig& cfg)
{
    if (cfg.epsilon.size() != 1 || cfg.g.size() != 1 || cfg.kappa.size() != 1) {
        throw UsageError("regime takes a single parameter set");
    }
    const double beta = cfg.beta ? *cfg.beta : cfg.epsilon[0] / 4.0;
    if (!std::isfinite(beta) || !std::isfinite(cfg.g[0]) || !std::isfinite(cfg.kappa[0])) {
        throw UsageError("regime parameters must be finite");
    }
    return {beta, cfg.g[0], cfg.kappa[0]};
}

Table run_regime(const RunConfig& cfg)
{
    const Couplings c = regime_couplings(cfg);
    const RegimeVerdict v = generation_verdict(c);
    Table table;
    table.columns = {"beta", "g", "kappa", "cond1", "cond2", "cond3", "possible", "growth_rate", "marginal"};
    std::vector<double> row = {c.beta,
                               c.g,
                               c.kappa,
                               v.cond1 ? 1.0 : 0.0,
                               v.cond2 ? 1.0 : 0.0,
                               v.cond3 ? 1.0 : 0.0,
                               v.generation_possible ? 1.0 : 0.0,
                               v.growth_rate,
                               v.marginal ? 1.0 : 0.0};
    for (std::size_t k = 0; k < v.lambdas.size(); ++k) {
        table.columns.push_back("lambda" + std::to_string(k + 1) + "_re");
        table.columns.push_back("lambda" + std::to_string(k + 1) + "_im");
        row.push_back(v.lambdas[k].real());
        row.push_back(v.lambdas[k].imag());
    }
    table.rows.push_back(std::move(row));
    return table;
}

Table run_map(const RunConfig& cfg)
{
    if (!cfg.beta) {
        throw UsageError("map requires --beta");
    }
    const auto cells = region_raster(*cfg.beta, cfg.kappa_range, cfg.g_range, cfg.nx, cfg.ny, cfg.threads);
    Table table{{"kappa", "g", "possible", "growth_rate", "marginal"}, {}};
    table.rows.reserve(cells.size());
    for (const auto& c : cells) {
        table.rows.push_back({c.kappa, c.g, c.possible ? 1.0 : 0.0, c.growth_rate, c.marginal ? 1.0 : 0.0});
    }
    return table;
}

int run_validate(const RunConfig& cfg, std::ostream& out)
{
    const auto results = validation::run_acceptance_suite();
    const std::string report = validation::format_report(results);
    if (cfg.format == OutputFormat::json) {
        nlohmann::json data = nlohmann::json::array();
        for (const auto& r : results) {
            nlohmann::json checks = nlohmann::json::array();
            for (const auto& c : r.checks) {
                checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            }
            data.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed()}, {"checks", checks}});
        }
        nlohmann::json doc;
        doc["config"] = config_json(cfg);
        doc["data"] = std::move(data);
        emit(doc.dump(2) + "\n", cfg, out);
    } else {
        emit(report, cfg, out);
    }
    if (!cfg.out.empty()) {
        out << report;
    }
    const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed(); });
    return all ? 0 : 1;
}

}  // namespace

std::string format_number(double value, int precision)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    if (value == 0.0) {
        return "0";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    std::string shortest(buf, res.ptr);

    int digits = 0;
    bool leading = true;
    for (char ch : shortest) {
        if (ch == 'e' || ch == 'E') {
            break;
        }
        if (ch < '0' || ch > '9') {
            continue;
        }
        if (leading && ch == '0') {
            continue;
        }
        leading = false;
        ++digits;
    }
    if (digits <= precision) {
        return shortest;
    }
    res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

RunConfig parse_run_config(const std::vector<std::string>& args)
{
    CLI::App app{"Photon generation in a modulated cavity coupled to an oscillator detector", "dce"};
    app.allow_config_extras(CLI::config_extras_mode::error);

    RunConfig cfg;
    std::string command;
    std::string format = "csv";
    double kappa_min = cfg.kappa_range.min;
    double kappa_max = cfg.kappa_range.max;
    double g_min = cfg.g_range.min;
    double g_max = cfg.g_range.max;
    double beta = 0.0;
    std::size_t m_max = 0;

    const std::map<std::string, Command> commands = {{"evolve", Command::evolve},
                                                     {"pdf", Command::pdf},
                                                     {"regime", Command::regime},
                                                     {"map", Command::map},
                                                     {"validate", Command::validate}};

    app.add_option("command", command, "evolve | pdf | regime | map | validate")
        ->required()
        ->check(CLI::IsMember({"evolve", "pdf", "regime", "map", "validate"}));
    app.add_option("--epsilon", cfg.epsilon, "modulation depth (comma list sweeps in evolve)")->delimiter(',');
    app.add_option("--g", cfg.g, "field-detector coupling")->delimiter(',');
    app.add_option("--kappa", cfg.kappa, "detuning")->delimiter(',');
    auto* beta_opt = app.add_option("--beta", beta, "squeezing rate for regime/map");
    app.add_option("--tmax", cfg.t_max, "final time");
    app.add_option("--steps", cfg.steps, "number of time steps");
    app.add_option("--t", cfg.t, "evaluation time for pdf");
    auto* mmax_opt = app.add_option("--mmax", m_max, "photon-number truncation");
    app.add_option("--kappa-min", kappa_min);
    app.add_option("--kappa-max", kappa_max);
    app.add_option("--g-min", g_min);
    app.add_option("--g-max", g_max);
    app.add_option("--nx", cfg.nx);
    app.add_option("--ny", cfg.ny);
    app.add_option("--out", cfg.out, "output path (default stdout)");
    app.add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--precision", cfg.precision, "significant digits");
    app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    app.set_config("--config", "", "flat key=value file; explicit flags win");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    cfg.command = commands.at(command);
    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    cfg.kappa_range = {kappa_min, kappa_max};
    cfg.g_range = {g_min, g_max};
    if (beta_opt->count() > 0) {
        cfg.beta = beta;
    }
    if (mmax_opt->count() > 0) {
        cfg.m_max = m_max;
    }

    if (cfg.steps < 1) {
        throw UsageError("--steps must be at least 1");
    }
    if (cfg.nx < 2 || cfg.ny < 2) {
        throw UsageError("--nx and --ny must be at least 2");
    }
    if (cfg.precision < 6 || cfg.precision > 17) {
        throw UsageError("--precision must lie in [6, 17]");
    }
    if (cfg.epsilon.empty() || cfg.g.empty() || cfg.kappa.empty()) {
        throw UsageError("parameter lists must not be empty");
    }
    return cfg;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        (args.empty() ? err : out) << kGrammar;
        return args.empty() ? 2 : 0;
    }
    RunConfig cfg;
    try {
        cfg = parse_run_config(args);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << kGrammar;
        return 2;
    }

    try {
        switch (cfg.command) {
        case Command::evolve:
            emit(render(run_evolve(cfg, err), cfg), cfg, out);
            return 0;
        case Command::pdf:
            emit(render(run_pdf(cfg), cfg), cfg, out);
            return 0;
        case Command::regime:
            emit(render(run_regime(cfg), cfg), cfg, out);
            return 0;
        case Command::map:
            emit(render(run_map(cfg), cfg), cfg, out);
            return 0;
        case Command::validate:
            return run_validate(cfg, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << kGrammar;
        return 2;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical failure in " << command_name(cfg.command) << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run_cli(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace dce::cli
