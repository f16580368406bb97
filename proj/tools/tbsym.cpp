// tbsym: Thom-Boardman symbols of polynomial map-germs at the origin.
//
// Exit codes: 0 success, 1 verification mismatch, 2 parse or usage error,
// 3 timeout, 4 domain error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "tbsym/tbsym.hpp"

namespace {

using namespace tbsym;

enum ExitCode : int { kOk = 0, kMismatch = 1, kParse = 2, kTimeout = 3, kDomain = 4 };

struct RunConfig {
    std::optional<std::size_t> depth;
    std::optional<std::size_t> threads;
    std::optional<std::size_t> timeout_seconds;
    bool json = false;
    bool no_interreduce = false;
    bool no_eliminate = false;
    std::string method = "pivot";
    std::uint64_t seed = 1;
    std::string log_level;
};

ChainOptions chain_options(const RunConfig& cfg) {
    ChainOptions o;
    o.depth = cfg.depth;
    o.interreduce = !cfg.no_interreduce;
    o.eliminate = !cfg.no_eliminate;
    o.method = cfg.method == "minors" ? ExtensionMethod::minors : ExtensionMethod::pivot;
    o.threads = cfg.threads.value_or(1);
    if (cfg.timeout_seconds) o.budget = Budget(std::chrono::seconds(*cfg.timeout_seconds));
    return o;
}

std::chrono::seconds cell_timeout(const RunConfig& cfg) {
    return std::chrono::seconds(cfg.timeout_seconds.value_or(300));
}

void add_run_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--depth", cfg.depth, "Maximum chain length (default: variables + 2)")->check(CLI::PositiveNumber);
    sub->add_option("--threads", cfg.threads, "Worker threads for minor enumeration")->check(CLI::PositiveNumber);
    sub->add_option("--timeout", cfg.timeout_seconds, "Time budget in seconds (per cell for verify commands)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--json", cfg.json, "Print the machine-readable report");
    sub->add_flag("--no-interreduce", cfg.no_interreduce, "Keep the raw generator list between steps");
    sub->add_flag("--no-eliminate", cfg.no_eliminate, "Do not split off linearly occurring coordinates");
    sub->add_option("--method", cfg.method, "Critical extension route")->check(CLI::IsMember({"pivot", "minors"}));
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--log", cfg.log_level, "Log level: error, info, debug");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

IdealPresentation load_ideal(const std::string& path) {
    try {
        return parse_ideal_file(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.message(), e.line(), e.column());
    }
}

void print_run(const ChainResult& run, const RunConfig& cfg) {
    if (cfg.json) {
        std::cout << symbol_report_json(make_report(run)) << '\n';
        return;
    }
    std::cout << format_symbol(run.symbol) << '\n';
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
        const auto& s = run.steps[i];
        std::cout << "  step " << i + 1 << ": corank " << s.corank << ", minor order "
                  << (s.minor_order ? std::to_string(*s.minor_order) : "-") << ", generators "
                  << s.generators_before << " -> " << s.generators_after << '\n';
    }
}

int compute_and_print(const IdealPresentation& germ, const RunConfig& cfg) {
    spdlog::info("computing symbol: {} variables, {} generators", germ.num_vars(), germ.generators().size());
    print_run(tb_symbol(germ, chain_options(cfg)), cfg);
    return kOk;
}

int print_table(const std::vector<CellOutcome>& cells) {
    bool failed = false;
    bool skipped = false;
    for (const auto& c : cells) {
        std::cout << to_string(c.status) << "  " << c.label << "  expected " << c.expected << "  got " << c.actual
                  << '\n';
        spdlog::info("{}: {:.3f} s", c.label, c.seconds);
        if (c.status == CellStatus::fail) {
            failed = true;
            if (!c.replay.empty()) std::cout << "replay:\n" << c.replay << (c.replay.back() == '\n' ? "" : "\n");
        }
        if (c.status == CellStatus::skipped) skipped = true;
    }
    std::size_t passed = 0;
    for (const auto& c : cells) passed += c.status == CellStatus::pass;
    std::cout << passed << "/" << cells.size() << " passed\n";
    if (failed) return kMismatch;
    return skipped ? kTimeout : kOk;
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) throw std::invalid_argument(text);
        const auto k = std::stoul(text.substr(0, comma));
        const auto r = std::stoul(text.substr(comma + 1));
        return {k, r};
    } catch (const std::exception&) {
        throw ParseError("expected a pair 'k,r', got '" + text + "'", 1, 1);
    }
}

void configure_logging(const RunConfig& cfg) {
    auto logger = spdlog::stderr_logger_st("tbsym");
    logger->set_pattern("%l: %v");
    spdlog::set_default_logger(logger);
    std::string level = cfg.log_level;
    if (level.empty())
        if (const char* env = std::getenv("TBSYM_LOG")) level = env;
    spdlog::set_level(level == "debug" ? spdlog::level::debug
                                       : (level == "info" ? spdlog::level::info : spdlog::level::err));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thom-Boardman symbols of polynomial map-germs at the origin"};
    app.require_subcommand(1);
    RunConfig cfg;

    std::string file;
    auto* compute = app.add_subcommand("compute", "Symbol of the germ in an ideal file");
    compute->add_option("file", file, "Ideal file")->required();

    std::size_t n = 0;
    std::size_t r = 0;
    auto* mu_cmd = app.add_subcommand("mu", "Symbol of the multiplication map mu(n, r)");
    mu_cmd->add_option("n", n)->required();
    mu_cmd->add_option("r", r)->required();

    auto* zero_cmd = app.add_subcommand("zero", "Symbol of the zero germ C^a -> C^b");
    zero_cmd->add_option("a", n)->required();
    zero_cmd->add_option("b", r)->required();

    std::string file2;
    auto* product = app.add_subcommand("product", "Symbol of the Cartesian product of two germs");
    product->add_option("left", file)->required();
    product->add_option("right", file2)->required();

    std::string spec_text;
    auto* realize_cmd = app.add_subcommand("realize", "Germ with a prescribed symbol, e.g. '2^1,1^2,0*'");
    realize_cmd->add_option("spec", spec_text)->required();

    auto* euclid = app.add_subcommand("euclid", "Euclidean symbol I(n, r) and its quotient trace");
    euclid->add_option("n", n)->required();
    euclid->add_option("r", r)->required();

    std::size_t max_sum = 0;
    auto* varley = app.add_subcommand("verify-varley", "mu(n, r) against I(n, r) for all n >= r, n + r <= max_sum");
    varley->add_option("max_sum", max_sum)->required();

    std::size_t cases = 50;
    auto* additivity = app.add_subcommand("verify-additivity", "Symbol additivity on seeded random pairs");
    additivity->add_option("--cases", cases)->check(CLI::PositiveNumber);

    std::size_t max_value = 0;
    std::size_t max_len = 0;
    std::vector<std::size_t> tails{0, 1};
    auto* verify_realize = app.add_subcommand("verify-realize", "Realize every small spec and recompute its symbol");
    verify_realize->add_option("max_value", max_value)->required();
    verify_realize->add_option("max_len", max_len)->required();
    verify_realize->add_option("--tails", tails)->delimiter(',');

    std::vector<std::string> pairs;
    auto* blocks_cmd = app.add_subcommand("verify-building-blocks", "mu(k*r, r) against r copies of mu(k, 1)");
    blocks_cmd->add_option("pairs", pairs, "Pairs 'k,r' (default: 1,2 2,2 3,2)");

    for (auto* sub : app.get_subcommands({})) add_run_options(sub, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kParse;
    }
    if (!cfg.threads)
        if (const char* env = std::getenv("TBSYM_THREADS")) cfg.threads = std::strtoul(env, nullptr, 10);
    if (cfg.threads && *cfg.threads == 0) cfg.threads = 1;
    configure_logging(cfg);

    try {
        if (compute->parsed()) return compute_and_print(load_ideal(file), cfg);
        if (mu_cmd->parsed()) return compute_and_print(mu(n, r), cfg);
        if (zero_cmd->parsed()) return compute_and_print(zero_germ(n, r), cfg);
        if (product->parsed()) return compute_and_print(cartesian_product(load_ideal(file), load_ideal(file2)), cfg);
        if (realize_cmd->parsed()) {
            const SymbolSpec spec = parse_symbol_spec(spec_text);
            std::string factors;
            for (const auto& f : realization_factors(spec)) factors += (factors.empty() ? "" : " x ") + f.name();
            if (factors.empty()) factors = "zero(0,1)";
            if (cfg.json)
                spdlog::info("factors: {}", factors);
            else
                std::cout << "factors: " << factors << '\n';
            return compute_and_print(realize(spec), cfg);
        }
        if (euclid->parsed()) {
            const EuclidRun run = euclid_run(n, r);
            std::uint64_t a = n;
            std::uint64_t b = r;
            for (std::size_t i = 0; i < run.quotients.size(); ++i) {
                const std::uint64_t rem = i < run.remainders.size() ? run.remainders[i] : 0;
                std::cout << a << " = " << run.quotients[i] << "*" << b << " + " << rem << '\n';
                a = b;
                b = rem;
            }
            const TBSymbol s = euclid_symbol(n, r);
            std::cout << "I(" << n << "," << r << ") = " << format_symbol(s) << '\n';
            std::cout << "run-length: " << format_run_length(s) << '\n';
            return kOk;
        }
        RunConfig cell_cfg = cfg;
        cell_cfg.timeout_seconds.reset();
        const ChainOptions options = chain_options(cell_cfg);
        if (varley->parsed()) {
            if (max_sum < 2) throw DomainError("verify-varley needs max_sum >= 2");
            std::vector<CellOutcome> cells;
            for (std::size_t s = 2; s <= max_sum; ++s)
                for (std::size_t rr = 1; 2 * rr <= s; ++rr) cells.push_back(check_varley(s - rr, rr, options, cell_timeout(cfg)));
            return print_table(cells);
        }
        if (additivity->parsed()) {
            std::mt19937_64 rng(cfg.seed);
            std::vector<CellOutcome> cells;
            for (std::size_t i = 0; i < cases; ++i) {
                const IdealPresentation left = random_germ(rng);
                const IdealPresentation right = random_germ(rng);
                cells.push_back(check_additivity("random #" + std::to_string(i + 1), left, right, 4, options,
                                                 cell_timeout(cfg)));
            }
            cells.push_back(check_additivity("mu(1,1) x mu(1,1)", mu(1, 1), mu(1, 1), 4, options, cell_timeout(cfg)));
            cells.push_back(check_additivity("mu(2,1) x zero(1,1)", mu(2, 1), zero_germ(1, 1), 4, options, cell_timeout(cfg)));
            cells.push_back(check_additivity("mu(1,1) x mu(2,2)", mu(1, 1), mu(2, 2), 4, options, cell_timeout(cfg)));
            cells.push_back(check_additivity("empty x mu(2,1)", IdealPresentation(), mu(2, 1), 4, options, cell_timeout(cfg)));
            return print_table(cells);
        }
        if (verify_realize->parsed()) {
            if (max_value < 1) throw DomainError("verify-realize needs max_value >= 1");
            std::vector<CellOutcome> cells;
            for (const auto& spec : enumerate_specs(max_value, max_len, tails))
                cells.push_back(check_realize(spec, options, cell_timeout(cfg)));
            return print_table(cells);
        }
        if (blocks_cmd->parsed()) {
            if (pairs.empty()) pairs = {"1,2", "2,2", "3,2"};
            std::vector<CellOutcome> cells;
            for (const auto& p : pairs) {
                const auto [k, rr] = parse_pair(p);
                if (k < 1 || rr < 1) throw DomainError("verify-building-blocks needs k, r >= 1");
                cells.push_back(check_building_blocks(k, rr, options, cell_timeout(cfg)));
            }
            return print_table(cells);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const TimeoutError& e) {
        std::cerr << "timeout: " << e.what() << '\n';
        return kTimeout;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kDomain;
    } catch (const StructuralError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomain;
    }
    return kOk;
}
