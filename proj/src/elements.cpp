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

#include "photonec/elements.hpp"

namespace photonec {

namespace {

void check_party(const SparseKet &state, int party) {
    if (party < 0 || static_cast<size_t>(party) >= state.n_photons()) {
        throw Error(ErrorKind::InvalidArity, "party " + std::to_string(party) +
                                                 " out of range for " +
                                                 std::to_string(state.n_photons()) + " photons");
    }
}

bool at_mode(const PhotonLabel &p) {
    return p.spatial == Spatial::Mode1 || p.spatial == Spatial::Mode2;
}

// Rewrites one party's label in every term. F: (PhotonLabel&) -> double
// phase; F throws if a term violates the element's stage precondition.
template <typename F>
SparseKet map_party(const SparseKet &state, int party, F f) {
    check_party(state, party);
    SparseKet::TermMap terms;
    for (const auto &[key, amp] : state.terms()) {
        BasisKet out = key;
        double phase = f(out[static_cast<size_t>(party)]);
        terms[out] += amp * phase;
    }
    return SparseKet::from_terms(state.n_photons(), std::move(terms));
}

}  // namespace

SparseKet apply_hwp(const SparseKet &state, int party) {
    return map_party(state, party, [](PhotonLabel &p) {
        if (!at_mode(p)) {
            throw Error(ErrorKind::StageOrder, "HWP needs the photon in an interferometer arm");
        }
        if (p.spatial == Spatial::Mode2) p.pol ^= 1;
        return 1.0;
    });
}

SparseKet apply_pbs(const SparseKet &state, int party) {
    return map_party(state, party, [](PhotonLabel &p) {
        if (!at_mode(p)) {
            throw Error(ErrorKind::StageOrder, "PBS needs the photon in an interferometer arm");
        }
        uint8_t port = p.spatial == Spatial::Mode1 ? (p.pol ^ 1) : p.pol;
        p.spatial = port ? Spatial::Port1 : Spatial::Port0;
        return 1.0;
    });
}

SparseKet apply_wdm(const SparseKet &state, int party) {
    return map_party(state, party, [](PhotonLabel &p) {
        if (p.spatial != Spatial::Fiber) {
            throw Error(ErrorKind::StageOrder, "WDM needs the photon on the fiber");
        }
        if (p.freq == Freq::Erased) {
            throw Error(ErrorKind::MissingDof, "WDM needs a frequency mode to route by");
        }
        p.spatial = p.freq == Freq::Omega1 ? Spatial::Mode1 : Spatial::Mode2;
        return 1.0;
    });
}

SparseKet apply_fs(const SparseKet &state, int party) {
    return map_party(state, party, [](PhotonLabel &p) {
        if (!at_mode(p)) {
            throw Error(ErrorKind::StageOrder,
                        "frequency shifter needs the photon in an interferometer arm");
        }
        p.freq = Freq::Erased;
        return 1.0;
    });
}

SparseKet apply_pauli_x(const SparseKet &state, int party) {
    return map_party(state, party, [](PhotonLabel &p) {
        p.pol ^= 1;
        return 1.0;
    });
}

SparseKet apply_pauli_z(const SparseKet &state, int party) {
    return map_party(state, party, [](PhotonLabel &p) { return p.pol ? -1.0 : 1.0; });
}

SparseKet apply_element(const SparseKet &state, ElementOp op) {
    switch (op.kind) {
        case ElementKind::HWP: return apply_hwp(state, op.party);
        case ElementKind::PBS: return apply_pbs(state, op.party);
        case ElementKind::WDM: return apply_wdm(state, op.party);
        case ElementKind::FS: return apply_fs(state, op.party);
        case ElementKind::PauliX: return apply_pauli_x(state, op.party);
        case ElementKind::PauliZ: return apply_pauli_z(state, op.party);
    }
    throw Error(ErrorKind::InvalidInput, "unknown element kind");
}

}  // namespace photonec
