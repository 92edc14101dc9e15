// Copyright 2026 The simplest-scenario Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace simplest {

/// Error taxonomy shared by the library and the CLI exit-code mapping.
/// Input-shaped failures (malformed text, out-of-range numbers) map to CLI
/// exit code 1; domain failures on well-formed data map to exit code 2.
enum class ErrorCode {
  NonNormalized,        // probability pair does not sum to 1 within tolerance
  OutOfRange,           // value outside its documented range (incl. disk violations)
  UnknownLabel,         // preparation label is not one of 00/01/10/11
  ParseError,           // malformed input text (line-numbered where possible)
  DuplicateRecord,      // the same (preparation, basis) appears twice
  UnknownBasis,         // basis tag is not DA/RL/HV
  MissingBasis,         // a preparation lacks a DA or RL record
  NoEquivalence,        // mixture segments do not cross inside [0,1]^2
  Degenerate,           // equivalence system degenerate beyond recovery
  InconsistentWeights,  // weights fail the residual check against the quad
  DomainError,          // bound evaluated outside its validity domain
};

inline const char* name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonNormalized: return "NonNormalized";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateRecord: return "DuplicateRecord";
    case ErrorCode::UnknownBasis: return "UnknownBasis";
    case ErrorCode::MissingBasis: return "MissingBasis";
    case ErrorCode::NoEquivalence: return "NoEquivalence";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::InconsistentWeights: return "InconsistentWeights";
    case ErrorCode::DomainError: return "DomainError";
  }
  return "Unknown";
}

/// True for errors caused by malformed or out-of-range input (CLI exit 1);
/// false for domain errors on well-formed data (CLI exit 2).
inline bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::NoEquivalence:
    case ErrorCode::Degenerate:
    case ErrorCode::InconsistentWeights:
    case ErrorCode::DomainError:
      return false;
    default:
      return true;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace simplest
