#pragma once

#include "dce/regimes.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dce::cli {

enum class Command { evolve, pdf, regime, map, validate };
enum class OutputFormat { csv, json };

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Fully resolved command-line configuration (flags over --config file).
struct RunConfig {
    Command command = Command::evolve;
    // evolve sweeps the Cartesian product of these lists.
    std::vector<double> epsilon{0.0};
    std::vector<double> g{0.0};
    std::vector<double> kappa{0.0};
    std::optional<double> beta;  // regime/map: used instead of epsilon / 4
    double t_max = 0.0;
    std::size_t steps = 100;
    double t = 0.0;  // pdf evaluation time
    std::optional<std::size_t> m_max;
    Range kappa_range{-4.0, 4.0};
    Range g_range{0.0, 4.0};
    std::size_t nx = 200;
    std::size_t ny = 200;
    std::string out;  // empty: standard output
    OutputFormat format = OutputFormat::csv;
    int precision = 12;
    unsigned threads = 0;
};

// Throws UsageError on malformed arguments or violated RunConfig bounds.
// args excludes the program name.
RunConfig parse_run_config(const std::vector<std::string>& args);

// Shortest round-trip decimal form, capped at `precision` significant digits.
std::string format_number(double value, int precision);

// Exit codes: 0 success, 1 numerical failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace dce::cli
