#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "pseudoboson/run.hpp"

namespace {

using pseudoboson::RunConfig;

struct FlagValues {
    std::optional<std::string> config_path, output, format, z, zp, Gamma, delta;
    std::optional<double> k1, k2, scale, m, gamma, k, tol;
    std::optional<int> nmax, lmax, nodes, n;
    std::optional<std::uint64_t> seed;
    bool timing = false;
};

void add_options(CLI::App* cmd, FlagValues& v) {
    cmd->add_option("--config", v.config_path, "JSON file with the same keys; flags override");
    cmd->add_option("--output,-o", v.output, "report path (default: stdout)");
    cmd->add_option("--format", v.format, "json, csv or both");
    cmd->add_option("--k1", v.k1);
    cmd->add_option("--k2", v.k2);
    cmd->add_option("--nmax", v.nmax);
    cmd->add_option("--lmax", v.lmax);
    cmd->add_option("--z", v.z, "complex, as 're' or 're,im'");
    cmd->add_option("--zp", v.zp, "complex, as 're' or 're,im'");
    cmd->add_option("--nodes", v.nodes);
    cmd->add_option("--scale", v.scale);
    cmd->add_option("--m", v.m);
    cmd->add_option("--gamma", v.gamma);
    cmd->add_option("--k", v.k);
    cmd->add_option("--Gamma", v.Gamma, "complex, as 're' or 're,im'");
    cmd->add_option("--delta", v.delta, "complex; taken from the phase solver when absent");
    cmd->add_option("--n", v.n);
    cmd->add_option("--seed", v.seed);
    cmd->add_option("--tol", v.tol);
    cmd->add_flag("--timing", v.timing, "report real wall times (breaks byte determinism)");
}

RunConfig build_config(const std::string& command, const FlagValues& v) {
    RunConfig cfg;
    cfg.command = command;
    if (v.config_path) {
        std::ifstream f(*v.config_path);
        if (!f) throw pseudoboson::ConfigError("cannot open config '" + *v.config_path + "'");
        nlohmann::json j;
        try {
            f >> j;
        } catch (const nlohmann::json::exception& e) {
            throw pseudoboson::ConfigError(std::string("config parse error: ") + e.what());
        }
        apply_json_config(cfg, j);
        cfg.command = command;  // the subcommand always wins
    }
    if (v.k1) cfg.k1 = *v.k1;
    if (v.k2) cfg.k2 = *v.k2;
    if (v.nmax) cfg.nmax = *v.nmax;
    if (v.lmax) cfg.lmax = *v.lmax;
    if (v.z) cfg.z = pseudoboson::parse_complex(*v.z);
    if (v.zp) cfg.zp = pseudoboson::parse_complex(*v.zp);
    if (v.nodes) cfg.nodes = *v.nodes;
    if (v.scale) cfg.scale = *v.scale;
    if (v.m) cfg.m = *v.m;
    if (v.gamma) cfg.gamma = *v.gamma;
    if (v.k) cfg.k = *v.k;
    if (v.Gamma) cfg.Gamma = pseudoboson::parse_complex(*v.Gamma);
    if (v.delta) cfg.delta = pseudoboson::parse_complex(*v.delta);
    if (v.n) cfg.n = *v.n;
    if (v.seed) cfg.seed = *v.seed;
    if (v.tol) cfg.tol = *v.tol;
    if (v.timing) cfg.timing = true;
    if (v.output) cfg.output = *v.output;
    if (v.format) cfg.format = *v.format;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification suite for two-dimensional pseudo-bosonic models"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"gll-verify", "algebra, families, metric operators and diagnostics of the deformed model"},
        {"gll-coherent", "closed-form coherent pair checks and the series comparison"},
        {"gll-roi", "weak resolution-of-identity quadrature on random pairs"},
        {"dho-check", "damped-oscillator algebra, vacuum obstruction and identities"},
        {"dho-sweep", "randomized sweep of the vacuum obstruction"},
        {"sll-baseline", "undeformed baseline: the full pipeline at k1 = k2 = 0"},
    };

    std::vector<FlagValues> values(commands.size());
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i].first, commands[i].second);
        add_options(sub, values[i]);
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        std::size_t chosen = 0;
        for (std::size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed()) chosen = i;

        const RunConfig cfg = build_config(commands[chosen].first, values[chosen]);
        cfg.validate();
        const pseudoboson::Report report = run(cfg);
        const std::string text = pseudoboson::render_json(report.body);

        if (cfg.output.empty()) {
            std::cout << text;
        } else if (cfg.format == "json" || cfg.format == "both") {
            pseudoboson::write_file_atomic(cfg.output, text);
        }
        if (cfg.format == "csv" || cfg.format == "both") {
            if (report.gram.rows == 0)
                throw pseudoboson::ConfigError("csv format: this command produces no Gram matrix");
            const auto csv_path =
                std::filesystem::path(cfg.output).replace_extension(".csv");
            pseudoboson::write_file_atomic(csv_path.string(),
                              pseudoboson::render_gram_csv(report.gram, report.gram_labels));
        }
        return exit_code_for(report);
    } catch (const pseudoboson::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const pseudoboson::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
