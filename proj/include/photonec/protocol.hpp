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

#include <utility>
#include <vector>

#include "photonec/noise.hpp"

namespace photonec {

/// Classical correction applied after postselection; the gate is always a
/// polarization bit flip (Pauli X).
struct Correction {
    int party;
    bool operator==(const Correction &) const = default;
};

/// Result of one protocol run. pattern bit l is the port party l's photon
/// exited from; corrections lists exactly the parties whose pattern bit is
/// 1; final_pol_state is the corrected polarization factor.
struct ProtocolOutcome {
    static constexpr double kSuccessThreshold = 1.0 - 1e-9;

    uint64_t pattern = 0;
    std::vector<Correction> corrections;
    SparseKet final_pol_state;
    double fidelity = 0.0;
    bool success = false;
};

/// One postselection branch with its probability, for enumerate-all runs.
struct EnumeratedOutcome {
    double probability = 0.0;
    ProtocolOutcome outcome;
};

/// Samples a global port pattern with its Born probability and returns the
/// renormalized polarization factor (spatial labels reset to Fiber after the
/// collapse). Requires every photon at a Port label in every term.
std::pair<uint64_t, SparseKet> measure_ports(const SparseKet &state, Rng &rng);

/// All port patterns with nonzero probability, ascending by pattern, each
/// with its renormalized collapsed state.
struct MeasuredBranch {
    uint64_t pattern;
    double probability;
    SparseKet collapsed;
};
std::vector<MeasuredBranch> enumerate_port_patterns(const SparseKet &state);

/// X on every party whose pattern bit is 1. This maps (|b> + |b_bar>)/sqrt2
/// to the all-H/all-V GHZ state whether the observed pattern was b or b_bar.
std::vector<Correction> infer_corrections(uint64_t pattern, int n_parties);

/// Noise sample plus the full element pipeline, stopping just before the
/// port measurement. Spatial: attach -> HWPs -> PBSs. Frequency: attach ->
/// WDMs -> FSs -> HWPs -> PBSs.
SparseKet prepare_premeasurement(Protocol protocol, const GhzPolState &g);

/// Full run: prepare, measure (one draw from rng), correct, score.
ProtocolOutcome run_protocol(Protocol protocol, const GhzPolState &g, Rng &rng);
ProtocolOutcome run_spatial_protocol(const GhzPolState &g, Rng &rng);
ProtocolOutcome run_frequency_protocol(const GhzPolState &g, Rng &rng);

/// Deterministic verification path: every measurement branch, each carried
/// through correction and scoring.
std::vector<EnumeratedOutcome> run_protocol_all_branches(Protocol protocol, const GhzPolState &g);

}  // namespace photonec
