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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "photonec/protocol.hpp"

namespace photonec {

enum class Mode : uint8_t { MonteCarlo, Exhaustive, OracleCheck };
enum class ProtocolChoice : uint8_t { Spatial, Frequency, Both };
enum class ReportFormat : uint8_t { Structured, Tabular };

/// Pauli channel noise applied to a stated input GHZ state.
struct ChannelNoiseSpec {
    GhzPolState input;
    PauliChannel channel;
};

using NoiseSpec = std::variant<GhzMixture, ChannelNoiseSpec>;

/// One experiment campaign. Field names match the JSON config schema
/// (`photonec schema` prints it). Limits: parties in [2, 64]; exhaustive
/// mode caps parties at 12, oracle-check at 4. Noise is only consulted in
/// montecarlo mode and defaults to the uniform GHZ mixture there.
struct ExperimentConfig {
    int parties = 3;
    ProtocolChoice protocol = ProtocolChoice::Spatial;
    Mode mode = Mode::MonteCarlo;
    std::optional<NoiseSpec> noise;
    uint64_t trials = 0;
    uint64_t seed = 0;
    std::string out_path;  // empty: stdout
    ReportFormat format = ReportFormat::Structured;

    /// Parses and validates; throws Validation with the offending field
    /// path in the message.
    static ExperimentConfig from_json(const nlohmann::json &j);
    static ExperimentConfig from_file(const std::string &path);

    /// Normalized config echo (mixture keys canonicalized, defaults filled).
    nlohmann::ordered_json to_json() const;

    /// Re-checks cross-field constraints after command-line overrides.
    void validate() const;
};

struct TrialRecord {
    uint64_t trial = 0;
    Protocol protocol = Protocol::Spatial;
    GhzPolState input;
    uint64_t pattern = 0;
    std::vector<Correction> corrections;
    double fidelity = 0.0;
    bool success = false;
    std::optional<double> branch_probability;  // set by enumerating modes
};

struct Aggregates {
    double success_rate = 0.0;
    double mean_fidelity = 0.0;
    std::map<std::string, uint64_t> pattern_histogram;
    double systems_consumed_per_output = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<TrialRecord> trials;
    std::optional<Aggregates> aggregates;  // absent when there are no records
    std::string version;
};

/// Runs the configured campaign.
///   montecarlo:   per trial, derive the trial stream, draw a noise
///                 realization, run the protocol(s).
///   exhaustive:   every GHZ basis input x every measurement branch
///                 (2^N x 2 records per protocol).
///   oracle-check: exhaustive sweep plus dense-reference comparison of the
///                 pre-measurement state and every corrected branch; throws
///                 OracleMismatch naming the first diverging input/branch.
/// With protocol = both the spatial campaign runs first, then frequency,
/// with records numbered consecutively; trial streams restart per protocol
/// so both protocols see identical draws.
ExperimentReport run_experiment(const ExperimentConfig &cfg);

/// Structured format: one JSON object with keys config, aggregates, trials,
/// version. Tabular format: header
/// trial,input_bits,input_sign,pattern,n_corrections,fidelity,success
/// and one row per record. Both are byte-stable for a fixed config + seed.
void emit_report(const ExperimentReport &report, ReportFormat format, std::ostream &out);

/// Writes to report.config.out_path in report.config.format (stdout when the
/// path is empty). Throws Io when the path cannot be opened.
void emit_report_file(const ExperimentReport &report);

std::string config_schema_text();
std::string report_schema_text();

}  // namespace photonec
