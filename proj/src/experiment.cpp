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

#include "photonec/experiment.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "photonec/dense_oracle.hpp"
#include "photonec/elements.hpp"
#include "photonec/version.hpp"

namespace photonec {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &path, const std::string &what) {
    throw Error(ErrorKind::Validation, path + ": " + what);
}

const json &require_key(const json &j, const std::string &path, const char *key) {
    auto it = j.find(key);
    if (it == j.end()) fail(path.empty() ? key : path + "." + key, "missing required field");
    return *it;
}

void reject_unknown_keys(const json &j, const std::string &path,
                         std::initializer_list<const char *> known) {
    for (const auto &[key, value] : j.items()) {
        bool ok = false;
        for (const char *k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) fail(path.empty() ? key : path + "." + key, "unknown field");
    }
}

int parse_int(const json &j, const std::string &path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

uint64_t parse_u64(const json &j, const std::string &path) {
    if (j.is_number_unsigned()) return j.get<uint64_t>();
    if (j.is_number_integer()) {
        auto v = j.get<int64_t>();
        if (v < 0) fail(path, "expected a nonnegative integer");
        return static_cast<uint64_t>(v);
    }
    fail(path, "expected a nonnegative integer");
}

double parse_prob(const json &j, const std::string &path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::string parse_string(const json &j, const std::string &path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

ProtocolChoice parse_protocol(const std::string &s, const std::string &path) {
    if (s == "spatial") return ProtocolChoice::Spatial;
    if (s == "frequency") return ProtocolChoice::Frequency;
    if (s == "both") return ProtocolChoice::Both;
    fail(path, "must be one of: spatial, frequency, both");
}

Mode parse_mode(const std::string &s, const std::string &path) {
    if (s == "montecarlo") return Mode::MonteCarlo;
    if (s == "exhaustive") return Mode::Exhaustive;
    if (s == "oracle-check") return Mode::OracleCheck;
    fail(path, "must be one of: montecarlo, exhaustive, oracle-check");
}

ReportFormat parse_format(const std::string &s, const std::string &path) {
    if (s == "json" || s == "json-like" || s == "structured") return ReportFormat::Structured;
    if (s == "csv" || s == "csv-like" || s == "tabular") return ReportFormat::Tabular;
    fail(path, "must be one of: json, csv");
}

const char *protocol_name(Protocol p) {
    return p == Protocol::Spatial ? "spatial" : "frequency";
}

const char *protocol_choice_name(ProtocolChoice p) {
    switch (p) {
        case ProtocolChoice::Spatial: return "spatial";
        case ProtocolChoice::Frequency: return "frequency";
        case ProtocolChoice::Both: return "both";
    }
    return "?";
}

const char *mode_name(Mode m) {
    switch (m) {
        case Mode::MonteCarlo: return "montecarlo";
        case Mode::Exhaustive: return "exhaustive";
        case Mode::OracleCheck: return "oracle-check";
    }
    return "?";
}

const char *format_name(ReportFormat f) {
    return f == ReportFormat::Structured ? "json" : "csv";
}

GhzPolState parse_ghz(const json &j, const std::string &path, int parties, bool allow_p) {
    if (!j.is_object()) fail(path, "expected an object with bits and sign");
    if (allow_p) {
        reject_unknown_keys(j, path, {"bits", "sign", "p"});
    } else {
        reject_unknown_keys(j, path, {"bits", "sign"});
    }
    std::string bits = parse_string(require_key(j, path, "bits"), path + ".bits");
    std::string sign = parse_string(require_key(j, path, "sign"), path + ".sign");
    if (static_cast<int>(bits.size()) != parties) {
        fail(path + ".bits", "length " + std::to_string(bits.size()) + " does not match parties=" +
                                 std::to_string(parties));
    }
    try {
        return GhzPolState::parse(bits, sign);
    } catch (const Error &e) {
        fail(path, e.what());
    }
}

NoiseSpec parse_noise(const json &j, int parties) {
    if (!j.is_object()) fail("noise", "expected an object");
    std::string type = parse_string(require_key(j, "noise", "type"), "noise.type");
    if (type == "mixture") {
        reject_unknown_keys(j, "noise", {"type", "weights"});
        const json &weights = require_key(j, "noise", "weights");
        if (!weights.is_array() || weights.empty()) {
            fail("noise.weights", "expected a non-empty array");
        }
        std::vector<std::pair<GhzPolState, double>> entries;
        for (size_t i = 0; i < weights.size(); ++i) {
            std::string path = "noise.weights[" + std::to_string(i) + "]";
            const json &w = weights[i];
            GhzPolState g = parse_ghz(w, path, parties, /*allow_p=*/true);
            double p = parse_prob(require_key(w, path, "p"), path + ".p");
            if (p < 0.0) fail(path + ".p", "negative probability");
            entries.emplace_back(g, p);
        }
        try {
            return GhzMixture::from_weights(entries);
        } catch (const Error &e) {
            fail("noise.weights", e.what());
        }
    }
    if (type == "pauli-channel") {
        reject_unknown_keys(j, "noise", {"type", "input", "channels"});
        GhzPolState input = parse_ghz(require_key(j, "noise", "input"), "noise.input", parties,
                                      /*allow_p=*/false);
        const json &channels = require_key(j, "noise", "channels");
        if (!channels.is_array() || channels.empty()) {
            fail("noise.channels", "expected a non-empty array");
        }
        if (channels.size() != 1 && channels.size() != static_cast<size_t>(parties)) {
            fail("noise.channels", "expected 1 entry (applied to every party) or parties=" +
                                       std::to_string(parties) + " entries, got " +
                                       std::to_string(channels.size()));
        }
        std::vector<PauliProbs> per_party;
        for (size_t i = 0; i < channels.size(); ++i) {
            std::string path = "noise.channels[" + std::to_string(i) + "]";
            const json &c = channels[i];
            if (!c.is_object()) fail(path, "expected an object");
            reject_unknown_keys(c, path, {"pI", "pX", "pY", "pZ"});
            PauliProbs q;
            q.i = c.contains("pI") ? parse_prob(c["pI"], path + ".pI") : 0.0;
            q.x = c.contains("pX") ? parse_prob(c["pX"], path + ".pX") : 0.0;
            q.y = c.contains("pY") ? parse_prob(c["pY"], path + ".pY") : 0.0;
            q.z = c.contains("pZ") ? parse_prob(c["pZ"], path + ".pZ") : 0.0;
            per_party.push_back(q);
        }
        if (per_party.size() == 1) {
            per_party.assign(static_cast<size_t>(parties), per_party.front());
        }
        try {
            return ChannelNoiseSpec{input, PauliChannel(std::move(per_party))};
        } catch (const Error &e) {
            fail("noise.channels", e.what());
        }
    }
    fail("noise.type", "must be \"mixture\" or \"pauli-channel\"");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json &j) {
    if (!j.is_object()) fail("config", "expected a JSON object");
    reject_unknown_keys(
        j, "", {"parties", "protocol", "mode", "noise", "trials", "seed", "out", "format"});
    ExperimentConfig cfg;
    if (j.contains("parties")) cfg.parties = parse_int(j["parties"], "parties");
    if (j.contains("protocol")) {
        cfg.protocol = parse_protocol(parse_string(j["protocol"], "protocol"), "protocol");
    }
    if (j.contains("mode")) cfg.mode = parse_mode(parse_string(j["mode"], "mode"), "mode");
    if (j.contains("trials")) cfg.trials = parse_u64(j["trials"], "trials");
    if (j.contains("seed")) cfg.seed = parse_u64(j["seed"], "seed");
    if (j.contains("out")) cfg.out_path = parse_string(j["out"], "out");
    if (j.contains("format")) {
        cfg.format = parse_format(parse_string(j["format"], "format"), "format");
    }
    if (cfg.parties < 2 || cfg.parties > kMaxParties) {
        fail("parties", "must be in [2, " + std::to_string(kMaxParties) + "]");
    }
    if (j.contains("noise") && !j["noise"].is_null()) {
        cfg.noise = parse_noise(j["noise"], cfg.parties);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error &e) {
        throw Error(ErrorKind::Validation, "config file " + path + ": " + e.what());
    }
    return from_json(j);
}

void ExperimentConfig::validate() const {
    if (parties < 2 || parties > kMaxParties) {
        fail("parties", "must be in [2, " + std::to_string(kMaxParties) + "]");
    }
    if (mode == Mode::Exhaustive && parties > 12) {
        fail("parties", "exhaustive mode sweeps 2^N inputs; parties capped at 12");
    }
    if (mode == Mode::OracleCheck && parties > DenseState::kMaxParties) {
        fail("parties", "oracle-check holds a dense state; parties capped at " +
                            std::to_string(DenseState::kMaxParties));
    }
    if (mode == Mode::MonteCarlo && !noise.has_value() && parties > 20) {
        fail("noise", "default uniform noise enumerates 2^parties weights; configure noise "
                      "explicitly for parties > 20");
    }
    if (noise.has_value()) {
        if (const GhzMixture *mix = std::get_if<GhzMixture>(&*noise)) {
            if (mix->n_parties() != parties) {
                fail("noise.weights", "mixture is over " + std::to_string(mix->n_parties()) +
                                          " parties but parties=" + std::to_string(parties));
            }
        } else {
            const ChannelNoiseSpec &ch = std::get<ChannelNoiseSpec>(*noise);
            if (ch.channel.n_parties() != parties) {
                fail("noise.channels", "channel has " + std::to_string(ch.channel.n_parties()) +
                                           " parties but parties=" + std::to_string(parties));
            }
            if (ch.input.n_parties != parties) {
                fail("noise.input", "input is over " + std::to_string(ch.input.n_parties) +
                                        " parties but parties=" + std::to_string(parties));
            }
        }
    }
}

ordered_json ExperimentConfig::to_json() const {
    ordered_json j;
    j["parties"] = parties;
    j["protocol"] = protocol_choice_name(protocol);
    j["mode"] = mode_name(mode);
    if (noise.has_value()) {
        ordered_json n;
        if (const GhzMixture *mix = std::get_if<GhzMixture>(&*noise)) {
            n["type"] = "mixture";
            ordered_json weights = ordered_json::array();
            for (const auto &[state, p] : mix->weights()) {
                ordered_json w;
                w["bits"] = state.bits_string();
                w["sign"] = std::string(1, state.sign_char());
                w["p"] = p;
                weights.push_back(std::move(w));
            }
            n["weights"] = std::move(weights);
        } else {
            const ChannelNoiseSpec &ch = std::get<ChannelNoiseSpec>(*noise);
            n["type"] = "pauli-channel";
            n["input"] = {{"bits", ch.input.bits_string()},
                          {"sign", std::string(1, ch.input.sign_char())}};
            ordered_json channels = ordered_json::array();
            for (const PauliProbs &q : ch.channel.per_party()) {
                ordered_json c;
                c["pI"] = q.i;
                c["pX"] = q.x;
                c["pY"] = q.y;
                c["pZ"] = q.z;
                channels.push_back(std::move(c));
            }
            n["channels"] = std::move(channels);
        }
        j["noise"] = std::move(n);
    } else {
        j["noise"] = nullptr;
    }
    j["trials"] = trials;
    j["seed"] = seed;
    j["out"] = out_path;
    j["format"] = format_name(format);
    return j;
}

namespace {

std::vector<Protocol> protocols_for(ProtocolChoice choice) {
    switch (choice) {
        case ProtocolChoice::Spatial: return {Protocol::Spatial};
        case ProtocolChoice::Frequency: return {Protocol::Frequency};
        case ProtocolChoice::Both: return {Protocol::Spatial, Protocol::Frequency};
    }
    return {};
}

// Canonical GHZ basis enumeration: bits ascending (bit 0 clear), Plus before
// Minus. 2^N states.
std::vector<GhzPolState> enumerate_ghz_basis(int parties) {
    std::vector<GhzPolState> states;
    const uint64_t half = uint64_t{1} << (parties - 1);
    for (uint64_t b = 0; b < half; ++b) {
        states.push_back(GhzPolState::canonical(b << 1, parties, Sign::Plus));
        states.push_back(GhzPolState::canonical(b << 1, parties, Sign::Minus));
    }
    return states;
}

TrialRecord record_from(uint64_t trial, Protocol protocol, const GhzPolState &input,
                        const ProtocolOutcome &outcome) {
    TrialRecord r;
    r.trial = trial;
    r.protocol = protocol;
    r.input = input;
    r.pattern = outcome.pattern;
    r.corrections = outcome.corrections;
    r.fidelity = outcome.fidelity;
    r.success = outcome.success;
    return r;
}

void run_montecarlo(const ExperimentConfig &cfg, std::vector<TrialRecord> &records) {
    // Noise defaults to the completely mixed polarization state.
    NoiseSpec noise = cfg.noise.has_value() ? *cfg.noise : NoiseSpec{GhzMixture::uniform(cfg.parties)};
    for (Protocol protocol : protocols_for(cfg.protocol)) {
        for (uint64_t t = 0; t < cfg.trials; ++t) {
            Rng rng = Rng::for_trial(cfg.seed, t);
            GhzPolState g = std::holds_alternative<GhzMixture>(noise)
                                ? std::get<GhzMixture>(noise).sample(rng)
                                : std::get<ChannelNoiseSpec>(noise).channel.sample(
                                      std::get<ChannelNoiseSpec>(noise).input, rng);
            ProtocolOutcome outcome = run_protocol(protocol, g, rng);
            records.push_back(record_from(records.size(), protocol, g, outcome));
        }
    }
}

void run_exhaustive(const ExperimentConfig &cfg, std::vector<TrialRecord> &records) {
    for (Protocol protocol : protocols_for(cfg.protocol)) {
        for (const GhzPolState &g : enumerate_ghz_basis(cfg.parties)) {
            for (const EnumeratedOutcome &eo : run_protocol_all_branches(protocol, g)) {
                TrialRecord r = record_from(records.size(), protocol, g, eo.outcome);
                r.branch_probability = eo.probability;
                records.push_back(std::move(r));
            }
        }
    }
}

[[noreturn]] void oracle_mismatch(Protocol protocol, const GhzPolState &g,
                                  const std::string &where) {
    throw Error(ErrorKind::OracleMismatch,
                "dense reference diverges at input bits=" + g.bits_string() + " sign=" +
                    std::string(1, g.sign_char()) + " protocol=" + protocol_name(protocol) +
                    " " + where);
}

void run_oracle_check(const ExperimentConfig &cfg, std::vector<TrialRecord> &records) {
    constexpr double tol = 1e-12;
    for (Protocol protocol : protocols_for(cfg.protocol)) {
        for (const GhzPolState &g : enumerate_ghz_basis(cfg.parties)) {
            SparseKet sparse_pre = prepare_premeasurement(protocol, g);

            DenseState dense = DenseState::prepare(protocol, g);
            if (protocol == Protocol::Frequency) {
                for (int l = 0; l < cfg.parties; ++l) dense.apply_wdm(l);
                for (int l = 0; l < cfg.parties; ++l) dense.apply_fs(l);
            }
            for (int l = 0; l < cfg.parties; ++l) dense.apply_hwp(l);
            for (int l = 0; l < cfg.parties; ++l) dense.apply_pbs(l);

            if (!dense_equal_up_to_phase(dense.amplitudes(), DenseState::from_sparse(sparse_pre),
                                         tol)) {
                oracle_mismatch(protocol, g, "branch=pre-measurement");
            }

            auto dense_probs = dense.port_pattern_probs();
            auto branches = enumerate_port_patterns(sparse_pre);
            if (branches.size() != dense_probs.size()) {
                oracle_mismatch(protocol, g, "branch=pattern-support");
            }
            for (MeasuredBranch &branch : branches) {
                std::string where = "branch=" + bits_to_string(branch.pattern, cfg.parties);
                auto it = dense_probs.find(branch.pattern);
                if (it == dense_probs.end() || std::abs(it->second - branch.probability) > tol) {
                    oracle_mismatch(protocol, g, where);
                }
                std::vector<Correction> corrections =
                    infer_corrections(branch.pattern, cfg.parties);
                SparseKet corrected = branch.collapsed;
                for (const Correction &c : corrections) {
                    corrected = apply_pauli_x(corrected, c.party);
                }
                if (!dense_equal_up_to_phase(dense.corrected_pol_factor(branch.pattern),
                                             DenseState::pol_vector_from_sparse(corrected),
                                             tol)) {
                    oracle_mismatch(protocol, g, where);
                }
                ProtocolOutcome outcome;
                outcome.pattern = branch.pattern;
                outcome.corrections = std::move(corrections);
                outcome.final_pol_state = std::move(corrected);
                outcome.fidelity = fidelity_to_ghz_plus(outcome.final_pol_state);
                outcome.success = outcome.fidelity >= ProtocolOutcome::kSuccessThreshold;
                TrialRecord r = record_from(records.size(), protocol, g, outcome);
                r.branch_probability = branch.probability;
                records.push_back(std::move(r));
            }
        }
    }
}

Aggregates aggregate(const std::vector<TrialRecord> &records) {
    Aggregates agg;
    uint64_t successes = 0;
    double fid_sum = 0.0;
    for (const TrialRecord &r : records) {
        successes += r.success ? 1 : 0;
        fid_sum += r.fidelity;
        agg.pattern_histogram[bits_to_string(r.pattern, r.input.n_parties)] += 1;
    }
    agg.success_rate = static_cast<double>(successes) / static_cast<double>(records.size());
    agg.mean_fidelity = fid_sum / static_cast<double>(records.size());
    agg.systems_consumed_per_output =
        successes == 0 ? 0.0
                       : static_cast<double>(records.size()) / static_cast<double>(successes);
    return agg;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig &cfg) {
    cfg.validate();
    ExperimentReport report;
    report.config = cfg;
    report.version = kVersion;
    switch (cfg.mode) {
        case Mode::MonteCarlo: run_montecarlo(cfg, report.trials); break;
        case Mode::Exhaustive: run_exhaustive(cfg, report.trials); break;
        case Mode::OracleCheck: run_oracle_check(cfg, report.trials); break;
    }
    if (!report.trials.empty()) {
        report.aggregates = aggregate(report.trials);
    }
    return report;
}

namespace {

ordered_json record_to_json(const TrialRecord &r) {
    ordered_json j;
    j["trial"] = r.trial;
    j["protocol"] = protocol_name(r.protocol);
    j["input_bits"] = r.input.bits_string();
    j["input_sign"] = std::string(1, r.input.sign_char());
    j["pattern"] = bits_to_string(r.pattern, r.input.n_parties);
    ordered_json corrections = ordered_json::array();
    for (const Correction &c : r.corrections) {
        corrections.push_back(ordered_json{{"party", c.party}, {"gate", "X"}});
    }
    j["corrections"] = std::move(corrections);
    j["fidelity"] = r.fidelity;
    j["success"] = r.success;
    if (r.branch_probability.has_value()) {
        j["branch_probability"] = *r.branch_probability;
    }
    return j;
}

}  // namespace

void emit_report(const ExperimentReport &report, ReportFormat format, std::ostream &out) {
    if (format == ReportFormat::Structured) {
        ordered_json j;
        j["config"] = report.config.to_json();
        if (report.aggregates.has_value()) {
            const Aggregates &agg = *report.aggregates;
            ordered_json a;
            a["success_rate"] = agg.success_rate;
            a["mean_fidelity"] = agg.mean_fidelity;
            ordered_json hist;
            for (const auto &[pattern, count] : agg.pattern_histogram) hist[pattern] = count;
            a["pattern_histogram"] = std::move(hist);
            a["systems_consumed_per_output"] = agg.systems_consumed_per_output;
            j["aggregates"] = std::move(a);
        } else {
            j["aggregates"] = nullptr;
        }
        ordered_json trials = ordered_json::array();
        for (const TrialRecord &r : report.trials) trials.push_back(record_to_json(r));
        j["trials"] = std::move(trials);
        j["version"] = report.version;
        out << j.dump(2) << '\n';
        return;
    }
    out << "trial,input_bits,input_sign,pattern,n_corrections,fidelity,success\n";
    for (const TrialRecord &r : report.trials) {
        out << r.trial << ',' << r.input.bits_string() << ',' << r.input.sign_char() << ','
            << bits_to_string(r.pattern, r.input.n_parties) << ',' << r.corrections.size() << ','
            << json(r.fidelity).dump() << ',' << (r.success ? "true" : "false") << '\n';
    }
}

void emit_report_file(const ExperimentReport &report) {
    if (report.config.out_path.empty()) {
        emit_report(report, report.config.format, std::cout);
        return;
    }
    std::ofstream out(report.config.out_path);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot open output file: " + report.config.out_path);
    }
    emit_report(report, report.config.format, out);
    if (!out) {
        throw Error(ErrorKind::Io, "write failed: " + report.config.out_path);
    }
}

std::string config_schema_text() {
    return R"(Experiment config (JSON object; all fields optional unless noted):
  parties   integer in [2, 64], default 3. Exhaustive mode caps it at 12,
            oracle-check at 4.
  protocol  "spatial" | "frequency" | "both", default "spatial". With
            "both" the spatial campaign runs first, then frequency, records
            numbered consecutively; per-trial streams restart per protocol.
  mode      "montecarlo" | "exhaustive" | "oracle-check", default
            "montecarlo".
  trials    nonnegative integer, default 0. Monte Carlo only; enumerating
            modes derive their record count (2^parties x 2 per protocol).
  seed      nonnegative 64-bit integer, default 0. Trial t draws from
            mt19937_64 seeded with
            splitmix64(seed + (t + 1) * 0x9e3779b97f4a7c15).
  noise     Monte Carlo only; ignored by the enumerating modes. Default:
            the uniform mixture over all 2^parties GHZ basis states. One of
              {"type": "mixture",
               "weights": [{"bits": "000", "sign": "+", "p": 0.25}, ...]}
                 weights nonnegative, summing to 1 within 1e-9; bits is a
                 party-0-first string of length parties; complementary bits
                 name the same state and are merged.
              {"type": "pauli-channel",
               "input": {"bits": "000", "sign": "+"},
               "channels": [{"pI": 0.9, "pX": 0.1, "pY": 0, "pZ": 0}, ...]}
                 one entry per party, or a single entry applied to every
                 party; each quadruple sums to 1 within 1e-9.
  out       output file path; empty writes to stdout.
  format    "json" (structured report) | "csv" (tabular), default "json".
)";
}

std::string report_schema_text() {
    return R"(Structured report (JSON object, key order fixed):
  config      normalized echo of the experiment config.
  aggregates  null when there are no records, else
                success_rate                fraction of records with
                                            fidelity >= 1 - 1e-9
                mean_fidelity               mean over records
                pattern_histogram           observed port pattern -> count
                systems_consumed_per_output records / successes (1 for
                                            these protocols)
  trials      array of records:
                trial               record index (0-based, consecutive)
                protocol            "spatial" | "frequency"
                input_bits          canonical GHZ index string, party 0
                                    first
                input_sign          "+" | "-"
                pattern             observed port pattern, party 0 first
                corrections         [{party, gate: "X"}, ...], exactly the
                                    parties whose pattern bit is 1
                fidelity            |<GHZ+|final>|^2
                success             fidelity >= 1 - 1e-9
                branch_probability  present in enumerating modes
  version     engine version string.

Tabular report (CSV): header
  trial,input_bits,input_sign,pattern,n_corrections,fidelity,success
and one row per record.

Identical config + seed reproduce both formats byte for byte.
)";
}

}  // namespace photonec
