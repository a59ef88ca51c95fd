// birow: exact birational rowmotion on finite posets, from the command line.
//
// Built entirely on the public C API in birow.h; no internal headers.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "birow.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string poset = "rect:2x2";
    std::string ring = "mat:2";
    std::uint64_t seed = 1;
    long trials = 10;
    long max_iter = 0;  // 0 = per-check default; 6 for orbit/slacks dumps
    long bound = 9;
    std::string labeling_path;
    std::string output_path;
    bool json = false;
};

[[noreturn]] void die_usage(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(kExitUsage);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) die_usage("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (!in.good() && !in.eof()) die_usage("cannot read " + path);
    return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) die_usage("cannot write " + path);
    out << text;
    if (!out.good()) die_usage("cannot write " + path);
}

using PosetPtr = std::unique_ptr<birow_poset, decltype(&birow_poset_destroy)>;
using LabelingPtr = std::unique_ptr<birow_labeling, decltype(&birow_labeling_destroy)>;

void check_api(birow_status status) {
    if (status != BIROW_OK) die_usage(birow_last_error());
}

/// "file:PATH" poset specs load a poset JSON object; everything else is a
/// family spec handled by the library.
nlohmann::json poset_config_value(const std::string& spec) {
    if (spec.rfind("file:", 0) == 0) return nlohmann::json::parse(read_file(spec.substr(5)));
    return spec;
}

PosetPtr make_poset(const nlohmann::json& poset_value) {
    birow_poset* raw = nullptr;
    if (poset_value.is_string())
        check_api(birow_poset_create(poset_value.get<std::string>().c_str(), &raw));
    else
        check_api(birow_poset_create_from_json(poset_value.dump().c_str(), &raw));
    return PosetPtr(raw, &birow_poset_destroy);
}

LabelingPtr make_labeling(const birow_poset* poset, const Options& opt) {
    birow_labeling* raw = nullptr;
    if (!opt.labeling_path.empty()) {
        const std::string text = read_file(opt.labeling_path);
        const birow_status status = birow_labeling_create_from_json(poset, text.c_str(), &raw);
        if (status != BIROW_OK)
            die_usage(opt.labeling_path + ": " + birow_last_error());
    } else {
        check_api(birow_labeling_random(poset, opt.ring.c_str(), opt.seed, opt.bound, &raw));
    }
    return LabelingPtr(raw, &birow_labeling_destroy);
}

nlohmann::json make_config(const Options& opt, const nlohmann::json& poset_value) {
    nlohmann::json config;
    config["poset"] = poset_value;
    config["ring"] = opt.ring;
    config["seed"] = opt.seed;
    config["entry_bound"] = opt.bound;
    if (opt.max_iter > 0) config["max_iterations"] = opt.max_iter;
    config["trials"] = opt.trials;
    return config;
}

nlohmann::json run_one_check(const std::string& name, const nlohmann::json& config) {
    char* raw = nullptr;
    check_api(birow_run_check(name.c_str(), config.dump().c_str(), &raw));
    std::unique_ptr<char, decltype(&birow_string_free)> guard(raw, &birow_string_free);
    return nlohmann::json::parse(raw);
}

void print_verdict_table(const nlohmann::json& verdicts) {
    for (const auto& v : verdicts) {
        std::cout << std::left << std::setw(34) << v.at("check").get<std::string>()
                  << std::setw(18) << v.at("status").get<std::string>()
                  << "trials=" << v.at("trials").get<long>() << "\n";
        if (v.contains("detail")) {
            const auto& detail = v.at("detail");
            if (detail.contains("conclusion"))
                std::cout << "    " << detail.at("conclusion").get<std::string>() << "\n";
            if (detail.contains("first_return_parameters") &&
                detail.at("first_return_parameters").is_array())
                std::cout << "    first return parameters (y, z) = "
                          << detail.at("first_return_parameters").dump() << "\n";
        }
        for (const auto& w : v.at("failures")) {
            std::cout << "    FAILED";
            if (w.contains("identity")) std::cout << ": " << w.at("identity").get<std::string>();
            if (w.contains("element")) std::cout << " at " << w.at("element").get<std::string>();
            if (w.contains("seed")) std::cout << " (seed " << w.at("seed") << ")";
            std::cout << "\n";
        }
    }
}

/// Emits the report and converts verdict statuses to the process exit code:
/// 0 when every check passed or was not applicable, 1 otherwise.
int finish(const std::string& command, const nlohmann::json& config,
           const nlohmann::json& verdicts, const Options& opt) {
    nlohmann::json report;
    report["command"] = command;
    report["config"] = config;
    report["verdicts"] = verdicts;
    const std::string text = report.dump(2) + "\n";
    if (!opt.output_path.empty()) write_file(opt.output_path, text);
    if (opt.json)
        std::cout << text;
    else
        print_verdict_table(verdicts);
    for (const auto& v : verdicts) {
        const std::string status = v.at("status").get<std::string>();
        if (status != "pass" && status != "not_applicable") return kExitCheckFailed;
    }
    return kExitOk;
}

/// orbit/slacks emit raw data, not verdicts; they exit 0 unless usage fails.
int finish_dump(const std::string& command, const nlohmann::json& config,
                const nlohmann::json& result, const Options& opt) {
    nlohmann::json report;
    report["command"] = command;
    report["config"] = config;
    report["result"] = result;
    const std::string text = report.dump(2) + "\n";
    if (!opt.output_path.empty()) write_file(opt.output_path, text);
    if (opt.json || opt.output_path.empty()) std::cout << text;
    return kExitOk;
}

void add_common_options(CLI::App* cmd, Options& opt, const std::string& default_poset,
                        const std::string& default_ring) {
    opt.poset = default_poset;
    opt.ring = default_ring;
    cmd->add_option("--poset", opt.poset,
                    "Poset: rect:PxQ | delta:P | nabla:P | tria:P | trap:P,S | claw | file:PATH");
    cmd->add_option("--ring", opt.ring, "Ring: q | mat:N | trop");
    cmd->add_option("--seed", opt.seed, "Base PRNG seed; trial t uses seed+t");
    cmd->add_option("--trials", opt.trials, "Number of independent trials")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", opt.max_iter, "Iteration depth (default: per check)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--bound", opt.bound, "Random entries are drawn from -bound..bound")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--labeling", opt.labeling_path, "Load the initial labeling from a JSON file");
    cmd->add_option("--output", opt.output_path, "Write the JSON report to this file");
    cmd->add_flag("--json", opt.json, "Print the JSON report instead of the table");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact birational rowmotion: orbits, slacks, and identity checkers"};
    app.require_subcommand(1);

    Options orbit_opt, slacks_opt, verify_opt, conjecture_opt, claw_opt, invariant_opt,
        tropical_opt;
    CLI::App* orbit_cmd = app.add_subcommand("orbit", "Dump an orbit prefix f, Rf, R^2 f, ...");
    add_common_options(orbit_cmd, orbit_opt, "rect:2x2", "mat:2");
    CLI::App* slacks_cmd = app.add_subcommand("slacks", "Dump the down/up slack table");
    add_common_options(slacks_cmd, slacks_opt, "rect:2x2", "mat:2");
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Check periodicity, reciprocity, and boundary identities");
    add_common_options(verify_cmd, verify_opt, "rect:2x2", "mat:2");
    CLI::App* conjecture_cmd =
        app.add_subcommand("conjecture", "Probe the triangle/trapezoid periodicity conjectures");
    add_common_options(conjecture_cmd, conjecture_opt, "delta:3", "mat:2");
    CLI::App* claw_cmd =
        app.add_subcommand("claw", "Run the fixed claw counterexample to finite order");
    add_common_options(claw_cmd, claw_opt, "claw", "mat:2");
    CLI::App* invariant_cmd =
        app.add_subcommand("invariant", "Check the cover-ratio sum invariant");
    add_common_options(invariant_cmd, invariant_opt, "rect:2x2", "mat:2");
    CLI::App* tropical_cmd =
        app.add_subcommand("tropical", "Check rectangle periodicity over max-plus");
    add_common_options(tropical_cmd, tropical_opt, "rect:2x2", "trop");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (orbit_cmd->parsed() || slacks_cmd->parsed()) {
            const bool is_orbit = orbit_cmd->parsed();
            const Options& opt = is_orbit ? orbit_opt : slacks_opt;
            const nlohmann::json poset_value = poset_config_value(opt.poset);
            const PosetPtr poset = make_poset(poset_value);
            const LabelingPtr labeling = make_labeling(poset.get(), opt);
            const long steps = opt.max_iter > 0 ? opt.max_iter : 6;
            char* raw = nullptr;
            if (is_orbit)
                check_api(birow_orbit_json(poset.get(), labeling.get(), steps, &raw));
            else
                check_api(birow_slack_table_json(poset.get(), labeling.get(), steps, &raw));
            std::unique_ptr<char, decltype(&birow_string_free)> guard(raw, &birow_string_free);
            nlohmann::json config = make_config(opt, poset_value);
            if (!opt.labeling_path.empty()) {
                char* flat = nullptr;
                check_api(birow_labeling_to_json(poset.get(), labeling.get(), &flat));
                std::unique_ptr<char, decltype(&birow_string_free)> fguard(flat,
                                                                           &birow_string_free);
                config["labeling"] = nlohmann::json::parse(flat);
            }
            return finish_dump(is_orbit ? "orbit" : "slacks", config, nlohmann::json::parse(raw),
                               opt);
        }
        if (verify_cmd->parsed()) {
            const nlohmann::json config =
                make_config(verify_opt, poset_config_value(verify_opt.poset));
            nlohmann::json verdicts = nlohmann::json::array();
            for (const char* name :
                 {"periodicity", "reciprocity", "reciprocity_implies_periodicity", "bottom_top"})
                verdicts.push_back(run_one_check(name, config));
            return finish("verify", config, verdicts, verify_opt);
        }
        if (conjecture_cmd->parsed()) {
            const nlohmann::json config =
                make_config(conjecture_opt, poset_config_value(conjecture_opt.poset));
            return finish("conjecture", config,
                          nlohmann::json::array({run_one_check("conjecture", config)}),
                          conjecture_opt);
        }
        if (claw_cmd->parsed()) {
            const nlohmann::json config = make_config(claw_opt, "claw");
            return finish("claw", config,
                          nlohmann::json::array({run_one_check("claw_counterexample", config)}),
                          claw_opt);
        }
        if (invariant_cmd->parsed()) {
            const nlohmann::json config =
                make_config(invariant_opt, poset_config_value(invariant_opt.poset));
            return finish("invariant", config,
                          nlohmann::json::array({run_one_check("invariant_sum", config)}),
                          invariant_opt);
        }
        if (tropical_cmd->parsed()) {
            const nlohmann::json config =
                make_config(tropical_opt, poset_config_value(tropical_opt.poset));
            return finish("tropical", config,
                          nlohmann::json::array({run_one_check("tropical_periodicity", config)}),
                          tropical_opt);
        }
    } catch (const nlohmann::json::exception& e) {
        die_usage(e.what());
    }
    die_usage("no subcommand selected");
}
