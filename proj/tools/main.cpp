// Copyright 2026 The photonec authors
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

// photonec: entanglement error-correction experiment driver.
//
// Subcommands pick the campaign mode; flags override config-file fields.
// Exit codes: 0 all records succeeded, 1 at least one record failed,
// 2 usage / validation / reference-check errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "photonec/experiment.hpp"
#include "photonec/version.hpp"

namespace {

using photonec::Error;
using photonec::ErrorKind;
using photonec::ExperimentConfig;
using photonec::ExperimentReport;

constexpr int kExitTrialFailure = 1;
constexpr int kExitError = 2;

struct Overrides {
    std::string config_path;
    std::optional<int> parties;
    std::optional<std::string> protocol;
    std::optional<uint64_t> trials;
    std::optional<uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

void add_campaign_options(CLI::App *cmd, Overrides &o, bool with_trials, bool with_seed) {
    cmd->add_option("--config", o.config_path, "JSON config file (flags override its fields)");
    cmd->add_option("--parties", o.parties, "number of photons N");
    cmd->add_option("--protocol", o.protocol, "spatial | frequency | both");
    if (with_trials) cmd->add_option("--trials", o.trials, "Monte Carlo trial count");
    if (with_seed) cmd->add_option("--seed", o.seed, "master seed for the trial streams");
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "json | csv");
}

// Config-file fields and flag overrides are merged into one JSON object and
// validated through a single path, so error messages carry the same field
// names either way. The subcommand always pins the mode.
ExperimentConfig build_config(const Overrides &o, const char *mode) {
    nlohmann::json j = nlohmann::json::object();
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw Error(ErrorKind::Io, "cannot open config file: " + o.config_path);
        try {
            in >> j;
        } catch (const nlohmann::json::parse_error &e) {
            throw Error(ErrorKind::Validation, "config file " + o.config_path + ": " + e.what());
        }
        if (!j.is_object()) {
            throw Error(ErrorKind::Validation, "config file " + o.config_path +
                                                   ": expected a JSON object");
        }
    }
    j["mode"] = mode;
    if (o.parties) j["parties"] = *o.parties;
    if (o.protocol) j["protocol"] = *o.protocol;
    if (o.trials) j["trials"] = *o.trials;
    if (o.seed) j["seed"] = *o.seed;
    if (o.out) j["out"] = *o.out;
    if (o.format) j["format"] = *o.format;
    return ExperimentConfig::from_json(j);
}

int run_campaign(const Overrides &o, const char *mode) {
    ExperimentConfig cfg = build_config(o, mode);
    ExperimentReport report = photonec::run_experiment(cfg);
    photonec::emit_report_file(report);
    for (const photonec::TrialRecord &r : report.trials) {
        if (!r.success) return kExitTrialFailure;
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"One-step multipartite polarization-entanglement error correction"};
    app.set_version_flag("--version", photonec::kVersion);
    app.require_subcommand(1);

    Overrides run_o, sweep_o, verify_o;

    CLI::App *run_cmd =
        app.add_subcommand("run", "Monte Carlo campaign: sample noise, run the protocol");
    add_campaign_options(run_cmd, run_o, /*with_trials=*/true, /*with_seed=*/true);

    CLI::App *sweep_cmd = app.add_subcommand(
        "sweep", "Exhaustive campaign: every GHZ basis input, every measurement branch");
    add_campaign_options(sweep_cmd, sweep_o, /*with_trials=*/false, /*with_seed=*/false);

    CLI::App *verify_cmd = app.add_subcommand(
        "verify", "Exhaustive sweep cross-checked against the dense reference engine");
    add_campaign_options(verify_cmd, verify_o, /*with_trials=*/false, /*with_seed=*/false);

    CLI::App *schema_cmd =
        app.add_subcommand("schema", "Print the config and report schemas");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (schema_cmd->parsed()) {
            std::cout << photonec::config_schema_text() << '\n' << photonec::report_schema_text();
            return 0;
        }
        if (run_cmd->parsed()) return run_campaign(run_o, "montecarlo");
        if (sweep_cmd->parsed()) return run_campaign(sweep_o, "exhaustive");
        return run_campaign(verify_o, "oracle-check");
    } catch (const Error &e) {
        std::cerr << "photonec: error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception &e) {
        std::cerr << "photonec: internal error: " << e.what() << '\n';
        return kExitError;
    }
}
