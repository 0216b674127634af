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

#include <stdexcept>
#include <string>

namespace photonec {

/// Failure categories surfaced by the engine. Tests match on the kind, not
/// on message text.
enum class ErrorKind {
    InvalidArity,   // party count below 2, or a party index out of range
    Shape,          // mismatched photon counts / bitstring widths
    StageOrder,     // element applied to a photon not at the expected stage
    MissingDof,     // element needs a degree of freedom the photon lacks
    Factorization,  // state is not a pure polarization factor
    InvalidInput,   // bad value at a library boundary (weights, probabilities)
    Validation,     // experiment config violation; message carries the field path
    Io,             // report emission failed
    OracleMismatch, // sparse engine diverged from the dense reference
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &msg) : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace photonec
