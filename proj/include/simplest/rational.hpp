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

#include <cmath>
#include <cstdint>
#include <string>

// The GMP-backed rational is the default; define SIMPLEST_USE_CPP_RATIONAL
// to build against the header-only backend instead.
#if defined(SIMPLEST_USE_CPP_RATIONAL)
#include <boost/multiprecision/cpp_int.hpp>
#else
#include <boost/multiprecision/gmp.hpp>
#endif

#include "simplest/errors.hpp"

namespace simplest {

#if defined(SIMPLEST_USE_CPP_RATIONAL)
using Rational = boost::multiprecision::cpp_rational;
#else
using Rational = boost::multiprecision::mpq_rational;
#endif

/// Denominator bound used when snapping measured coordinates to rationals.
inline constexpr long long kQuantDenominator = 1000000;

/// Nearest multiple of 1/den, ties away from zero. Keeps exact-arithmetic
/// verdicts independent of float noise below the quantum.
inline Rational quantize(double v, long long den = kQuantDenominator) {
  if (!std::isfinite(v))
    fail(ErrorCode::DomainError, "cannot quantize a non-finite value");
  double scaled = v * static_cast<double>(den);
  if (std::fabs(scaled) >= 9.2e18)  // llround would overflow
    fail(ErrorCode::DomainError, "value too large to quantize");
  return Rational(static_cast<long long>(std::llround(scaled)), den);
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline std::string to_fraction_string(const Rational& r) { return r.str(); }

}  // namespace simplest
