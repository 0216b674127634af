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

#include "photonec/protocol.hpp"

#include <cmath>

#include "photonec/elements.hpp"

namespace photonec {

namespace {

// pattern -> (probability, matching terms with spatial reset to Fiber)
struct BranchAccumulator {
    double probability = 0.0;
    SparseKet::TermMap terms;
};

std::map<uint64_t, BranchAccumulator> group_by_pattern(const SparseKet &state) {
    std::map<uint64_t, BranchAccumulator> branches;
    for (const auto &[key, amp] : state.terms()) {
        uint64_t pattern = 0;
        BasisKet stripped = key;
        for (size_t l = 0; l < key.size(); ++l) {
            switch (key[l].spatial) {
                case Spatial::Port1: pattern |= uint64_t{1} << l; break;
                case Spatial::Port0: break;
                default:
                    throw Error(ErrorKind::StageOrder,
                                "port measurement needs every photon at an outport");
            }
            stripped[l].spatial = Spatial::Fiber;
        }
        BranchAccumulator &acc = branches[pattern];
        acc.probability += std::norm(amp);
        acc.terms[stripped] += amp;
    }
    return branches;
}

SparseKet collapse(size_t n_photons, BranchAccumulator &&acc) {
    const double scale = 1.0 / std::sqrt(acc.probability);
    for (auto &[key, amp] : acc.terms) amp *= scale;
    return SparseKet::from_terms(n_photons, std::move(acc.terms));
}

ProtocolOutcome finish(uint64_t pattern, int n_parties, const SparseKet &collapsed) {
    ProtocolOutcome out;
    out.pattern = pattern;
    out.corrections = infer_corrections(pattern, n_parties);
    SparseKet corrected = collapsed;
    for (const Correction &c : out.corrections) {
        corrected = apply_pauli_x(corrected, c.party);
    }
    out.final_pol_state = std::move(corrected);
    out.fidelity = fidelity_to_ghz_plus(out.final_pol_state);
    out.success = out.fidelity >= ProtocolOutcome::kSuccessThreshold;
    return out;
}

}  // namespace

std::pair<uint64_t, SparseKet> measure_ports(const SparseKet &state, Rng &rng) {
    auto branches = group_by_pattern(state);
    double u = rng.next_unit();
    double acc = 0.0;
    auto chosen = std::prev(branches.end());  // rounding slack falls to the last branch
    for (auto it = branches.begin(); it != branches.end(); ++it) {
        acc += it->second.probability;
        if (u < acc) {
            chosen = it;
            break;
        }
    }
    return {chosen->first, collapse(state.n_photons(), std::move(chosen->second))};
}

std::vector<MeasuredBranch> enumerate_port_patterns(const SparseKet &state) {
    auto branches = group_by_pattern(state);
    std::vector<MeasuredBranch> out;
    out.reserve(branches.size());
    for (auto &[pattern, acc] : branches) {
        double p = acc.probability;
        out.push_back({pattern, p, collapse(state.n_photons(), std::move(acc))});
    }
    return out;
}

std::vector<Correction> infer_corrections(uint64_t pattern, int n_parties) {
    std::vector<Correction> corrections;
    for (int l = 0; l < n_parties; ++l) {
        if ((pattern >> l) & 1) corrections.push_back({l});
    }
    return corrections;
}

SparseKet prepare_premeasurement(Protocol protocol, const GhzPolState &g) {
    SparseKet state = apply_noise_sample(protocol, g);
    const int n = g.n_parties;
    if (protocol == Protocol::Frequency) {
        for (int l = 0; l < n; ++l) state = apply_wdm(state, l);
        for (int l = 0; l < n; ++l) state = apply_fs(state, l);
    }
    for (int l = 0; l < n; ++l) state = apply_hwp(state, l);
    for (int l = 0; l < n; ++l) state = apply_pbs(state, l);
    return state;
}

ProtocolOutcome run_protocol(Protocol protocol, const GhzPolState &g, Rng &rng) {
    SparseKet state = prepare_premeasurement(protocol, g);
    auto [pattern, collapsed] = measure_ports(state, rng);
    return finish(pattern, g.n_parties, collapsed);
}

ProtocolOutcome run_spatial_protocol(const GhzPolState &g, Rng &rng) {
    return run_protocol(Protocol::Spatial, g, rng);
}

ProtocolOutcome run_frequency_protocol(const GhzPolState &g, Rng &rng) {
    return run_protocol(Protocol::Frequency, g, rng);
}

std::vector<EnumeratedOutcome> run_protocol_all_branches(Protocol protocol,
                                                         const GhzPolState &g) {
    SparseKet state = prepare_premeasurement(protocol, g);
    std::vector<EnumeratedOutcome> out;
    for (MeasuredBranch &branch : enumerate_port_patterns(state)) {
        out.push_back({branch.probability, finish(branch.pattern, g.n_parties, branch.collapsed)});
    }
    return out;
}

}  // namespace photonec
