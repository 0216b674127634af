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

#include "photonec/state.hpp"

namespace photonec {

// Each optical element acts on one party's photon as an exact label rewrite
// (with a unit-modulus phase at most), so every op preserves the norm. The
// conventions below are fixed by the four-term correspondence of the
// interferometer algebra:
//   - the half-wave plate sits in the Mode2 arm: Mode2 branches have their
//     polarization complemented, Mode1 branches pass unchanged;
//   - a polarizing beam splitter sends (Mode1, pol p) to Port(1-p) and
//     (Mode2, pol p) to Port(p).

enum class ElementKind : uint8_t { HWP, PBS, WDM, FS, PauliX, PauliZ };

struct ElementOp {
    ElementKind kind;
    int party;
};

/// Half-wave plate: flips the polarization bit in every Mode2 branch.
/// Requires the photon at Mode1 or Mode2.
SparseKet apply_hwp(const SparseKet &state, int party);

/// Polarizing beam splitter: (Mode1, p) -> Port(1-p), (Mode2, p) -> Port(p),
/// polarization unchanged. Requires the photon at Mode1 or Mode2.
SparseKet apply_pbs(const SparseKet &state, int party);

/// Wavelength-division multiplexer, polarization independent:
/// (Fiber, w1) -> (Mode1, w1), (Fiber, w2) -> (Mode2, w2). Requires the
/// photon on the fiber with a frequency mode set.
SparseKet apply_wdm(const SparseKet &state, int party);

/// Frequency shifter: erases the frequency label in both arms, removing the
/// which-path distinguishability the WDM created. Requires the photon at
/// Mode1 or Mode2.
SparseKet apply_fs(const SparseKet &state, int party);

/// Pauli X on the party's polarization bit.
SparseKet apply_pauli_x(const SparseKet &state, int party);

/// Pauli Z: phase (-1)^pol on the party's polarization bit.
SparseKet apply_pauli_z(const SparseKet &state, int party);

SparseKet apply_element(const SparseKet &state, ElementOp op);

}  // namespace photonec
