// Command-line front end: runs the verification suites and the theorem-level
// experiments, prints one line per check, and writes results.csv plus
// summary.json to the output directory.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kinverify/bump.hpp"
#include "kinverify/experiments.hpp"
#include "kinverify/report.hpp"

namespace {

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string tok = text.substr(pos, comma - pos);
        if (!tok.empty()) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw std::invalid_argument(what + ": bad number '" + tok + "'");
            out.push_back(v);
        }
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument(what + ": empty list");
    return out;
}

bool parse_bool(const std::string& v, const std::string& what) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw std::invalid_argument(what + ": expected a boolean, got '" + v + "'");
}

void print_rows(const kinv::ReportSet& set) {
    for (const auto& r : set.rows) {
        std::printf("[%s] %-28s %-36s measured=%- .9e target=%- .9e tol=%.2e%s%s\n",
                    r.pass ? "PASS" : "FAIL", r.experiment.c_str(), r.params.c_str(),
                    r.measured, r.target, r.tolerance, r.note.empty() ? "" : "  # ",
                    r.note.c_str());
    }
    std::printf("%zu checks, %zu failed\n", set.rows.size(), set.fail_count());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kinverify: numerical verification of the kinetic mollification "
                 "calculus (d = 1)"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    int grid = 48;
    std::string tau_text, lambda_text;
    double p_value = 2.0;
    bool quick = false;

    app.add_option("--config", config_path, "flat key=value configuration file");
    app.add_option("--grid", grid, "grid resolution per axis");
    app.add_option("--tau", tau_text, "comma-separated mollification scales");
    app.add_option("--lambda", lambda_text, "comma-separated rescaling factors");
    app.add_option("--p", p_value, "Lebesgue exponent");
    app.add_option("--out", out_dir, "output directory for results.csv / summary.json");
    app.add_flag("--quick", quick, "reduced resolutions, relaxed tolerances");

    const char* names[] = {"verify-group",  "verify-trajectories", "verify-kernels",
                           "verify-defect", "besov",               "sobolev",
                           "scaling",       "balance",             "all"};
    const char* descs[] = {
        "group law, dilations, quasi-distance, ball volumes",
        "trajectory matrices, endpoint identities, deviation envelopes",
        "kernel masses, norms, difference-norm slopes",
        "mollification engine and the defect representation",
        "Besov-side transfer ratios across the rescaled family",
        "Sobolev-side transfer ratios and the square function",
        "scaling exponents of the four norms",
        "lambda balancing of the multiplicative bound",
        "every suite in sequence"};
    for (int i = 0; i < 9; ++i) app.add_subcommand(names[i], descs[i])->fallthrough();

    CLI11_PARSE(app, argc, argv);

    kinv::ExperimentConfig cfg;
    try {
        if (!config_path.empty()) {
            kinv::FlatConfig fc;
            std::string error;
            if (!kinv::parse_flat_config(config_path, fc, error)) {
                std::fprintf(stderr, "config %s: %s\n", config_path.c_str(), error.c_str());
                return 2;
            }
            for (const auto& [key, value] : fc.entries) {
                if (key == "grid")
                    cfg.grid_n = static_cast<int>(std::stod(value));
                else if (key == "tau")
                    cfg.tau_list = parse_list(value, "tau");
                else if (key == "lambda")
                    cfg.lambda_list = parse_list(value, "lambda");
                else if (key == "p")
                    cfg.p = std::stod(value);
                else if (key == "quick")
                    cfg.quick = parse_bool(value, "quick");
                else if (key == "family") {
                    if (value == "s0zero" || value == "s0-zero")
                        cfg.family = kinv::SplitVariant::S0Zero;
                    else if (value == "generic" || value == "s0generic")
                        cfg.family = kinv::SplitVariant::S0Generic;
                    else
                        throw std::invalid_argument("family: unknown value '" + value + "'");
                } else if (key == "out")
                    out_dir = value;
                else
                    throw std::invalid_argument("unknown key '" + key + "'");
            }
        }
        // explicit flags override the file
        if (app.count("--grid") > 0) cfg.grid_n = grid;
        if (app.count("--p") > 0) cfg.p = p_value;
        if (!tau_text.empty()) cfg.tau_list = parse_list(tau_text, "--tau");
        if (!lambda_text.empty()) cfg.lambda_list = parse_list(lambda_text, "--lambda");
        if (quick) cfg.quick = true;

        if (cfg.grid_n < 8) throw std::invalid_argument("grid must be at least 8");
        if (cfg.p <= 1.2) throw std::invalid_argument("p must exceed Q/(Q-1) = 1.2");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    std::printf("kinverify  |  bump: %s\n", kinv::bump_describe());

    kinv::ReportSet set;
    try {
        if (app.got_subcommand("verify-group"))
            set = kinv::verify_group_suite(cfg.quick);
        else if (app.got_subcommand("verify-trajectories"))
            set = kinv::verify_trajectory_suite(cfg.quick);
        else if (app.got_subcommand("verify-kernels"))
            set = kinv::verify_kernel_suite(cfg.quick);
        else if (app.got_subcommand("verify-defect"))
            set = kinv::verify_defect_suite(cfg.quick ? 16 : cfg.grid_n,
                                            cfg.tau_list.empty() ? 1.0 : cfg.tau_list.front(),
                                            cfg.quick, !cfg.quick);
        else if (app.got_subcommand("besov"))
            set = kinv::run_besov_experiment(cfg);
        else if (app.got_subcommand("sobolev"))
            set = kinv::run_sobolev_experiment(cfg);
        else if (app.got_subcommand("scaling"))
            set = kinv::run_scaling_experiment(cfg);
        else if (app.got_subcommand("balance"))
            set = kinv::run_balance_suite(cfg.quick ? 50 : 100);
        else
            set = kinv::run_all(cfg);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    print_rows(set);

    try {
        std::filesystem::create_directories(out_dir);
        kinv::write_csv(set, (std::filesystem::path(out_dir) / "results.csv").string());
        kinv::write_summary_json(set,
                                 (std::filesystem::path(out_dir) / "summary.json").string());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error writing outputs: %s\n", e.what());
        return 1;
    }

    return set.all_pass() ? 0 : 1;
}
