#include "qwire/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "qwire/errors.hpp"
#include "qwire/selfcheck.hpp"
#include "qwire/sweep.hpp"

namespace qwire {

namespace {

// flag name -> config key
const std::pair<const char*, const char*> kValueFlags[] = {
    {"--u11", "u11"},       {"--u22", "u22"},       {"--u12-re", "u12_re"},     {"--u12-im", "u12_im"},
    {"--d", "d"},           {"--k1", "k1"},         {"--dk", "dk"},             {"--dk-min", "dk_min"},
    {"--dk-max", "dk_max"}, {"--dk-steps", "dk_steps"}, {"--k1-min", "k1_min"}, {"--k1-max", "k1_max"},
    {"--k1-steps", "k1_steps"}, {"--k-lo", "k_lo"}, {"--k-hi", "k_hi"},         {"--out", "out"},
};

struct CommonFlags {
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::string config_path;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
    for (const auto& [flag, key] : kValueFlags) {
        flags.options[key] = sub->add_option(flag, flags.values[key], std::string("value for ") + key);
    }
    sub->add_option("--config", flags.config_path, "key=value config file; flags override it");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunConfig resolve(const CommonFlags& flags) {
    RunConfig cfg;
    if (!flags.config_path.empty()) cfg = parse_config_text(read_file(flags.config_path));
    for (const auto& [key, opt] : flags.options) {
        if (opt->count() > 0) apply_setting(cfg, key, flags.values.at(key));
    }
    return cfg;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) throw InvalidInput("cannot write '" + cfg.output_path + "'");
    file << text;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-electron entanglement from a double-delta barrier in a two-channel wire", "qwire"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version()));

    CommonFlags point_flags, fig2_flags, fig3_flags, res_flags, check_flags;
    auto* point = app.add_subcommand("point", "entanglement report at (k1, k1 + dk)");
    auto* fig2 = app.add_subcommand("fig2", "concurrence vs dk at fixed k1 (CSV)");
    auto* fig3 = app.add_subcommand("fig3", "concurrence over the (k1, dk) grid (CSV)");
    auto* res = app.add_subcommand("resonances", "transmission resonances per channel (CSV)");
    auto* check = app.add_subcommand("selfcheck", "run the invariant suites");
    add_common(point, point_flags);
    add_common(fig2, fig2_flags);
    add_common(fig3, fig3_flags);
    add_common(res, res_flags);
    add_common(check, check_flags);
    bool oracle = false;
    std::string fault;
    check->add_flag("--oracle", oracle, "also compare against the finite-difference oracle");
    check->add_option("--inject-fault", fault)->group("");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (point->parsed()) {
            const RunConfig cfg = resolve(point_flags);
            validate(cfg, Command::point);
            const EntanglementReport rep =
                analyze(cfg.chain(), to_internal(cfg.k1), to_internal(cfg.k1 + cfg.dk));
            out << point_report(cfg, rep);
            if (!cfg.output_path.empty()) emit(cfg, point_csv(cfg, rep), out);
        } else if (fig2->parsed()) {
            const RunConfig cfg = resolve(fig2_flags);
            emit(cfg, fig2_csv(cfg, fig2_rows(cfg)), out);
        } else if (fig3->parsed()) {
            const RunConfig cfg = resolve(fig3_flags);
            emit(cfg, fig3_csv(cfg, fig3_rows(cfg)), out);
        } else if (res->parsed()) {
            const RunConfig cfg = resolve(res_flags);
            emit(cfg, resonances_csv(cfg, resonance_tables(cfg)), out);
        } else if (check->parsed()) {
            SelfcheckOptions opt;
            opt.oracle = oracle;
            opt.inject_fault = fault;
            const auto results = run_selfcheck(opt);
            out << format_selfcheck(results);
            return all_passed(results) ? kExitOk : kExitSelfcheckFailed;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitOk;
}

} // namespace qwire
