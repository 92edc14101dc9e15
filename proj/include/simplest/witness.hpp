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

#include <array>
#include <cmath>
#include <optional>

#include "simplest/bloch.hpp"
#include "simplest/errors.hpp"

namespace simplest {

inline constexpr double kSqrt2 = 1.41421356237309504880;

/// Value of the preparation-noncontextuality expression on the ideal quad.
inline constexpr double kIdealWitness = 2.0 * kSqrt2 - 2.0;

/// Largest admissible weight mismatch between quad and EquivalenceWeights
/// when evaluating witnesses.
inline constexpr double kWeightResidualTol = 1e-8;

namespace detail {
inline void check_delta_nonneg(double delta) {
  if (!(delta >= 0.0))
    fail(ErrorCode::OutOfRange, "noise distance " + std::to_string(delta) +
                                    " is negative");
}
}  // namespace detail

/// Noncontextuality witness evaluated on raw disk coordinates at the
/// equivalence weights. Positive values rule out a noncontextual model.
inline double pusey_raw(const PreparationQuad& quad, const EquivalenceWeights& w,
                        double residual_tol = kWeightResidualTol) {
  PrepVector lhs = w.p * quad.p00 + (1.0 - w.p) * quad.p11;
  PrepVector rhs = w.q * quad.p01 + (1.0 - w.q) * quad.p10;
  double residual = infinity_norm(lhs - rhs);
  if (residual > residual_tol)
    fail(ErrorCode::InconsistentWeights,
         "weights reproduce the mixture equality only to " + std::to_string(residual));
  return w.p * (quad.p00.x + quad.p00.y + quad.p11.x + quad.p11.y) +
         w.q * (quad.p01.x - quad.p01.y + quad.p10.x - quad.p10.y) +
         (quad.p10.y - quad.p10.x - quad.p11.x - quad.p11.y) - 2.0;
}

/// Worst-case lower bound on the witness when every preparation sits within
/// distance delta of its ideal point.
inline double pusey_noise_bound(double delta) {
  detail::check_delta_nonneg(delta);
  return kIdealWitness - 16.0 * delta + 32.0 * kSqrt2 * delta * delta;
}

/// Noise-robust lower bound on the minimum assumption-free confidence that
/// the parity mixtures stay ontologically distinct. Defined for
/// delta < sqrt(2)/4.
inline double marvian_noise_bound(double delta) {
  detail::check_delta_nonneg(delta);
  double den = kSqrt2 - 4.0 * delta;
  if (den <= 0.0)
    fail(ErrorCode::DomainError, "noise distance " + std::to_string(delta) +
                                     " at or above sqrt(2)/4");
  return (den - 1.0) / (4.0 * den);
}

/// Distinguishability score of two preparations (or two ontic
/// distributions) at distance d: (1 + d)/2.
inline double distinguishability(double d) {
  if (!(d >= 0.0 && d <= 1.0))
    fail(ErrorCode::OutOfRange, "distance " + std::to_string(d) + " outside [0, 1]");
  return (1.0 + d) / 2.0;
}

/// Outcome of a parity-preservation test: the bound violated iff margin > 0.
struct ParityCondition {
  bool violated = false;
  double margin = 0.0;
};

/// Compares the ontological-distinctness floor f1 against the ceiling f2
/// that any parity-preserving model could still explain at noise delta.
/// Defined for delta < 1/(2*sqrt(2)).
inline ParityCondition parity_condition(double delta) {
  detail::check_delta_nonneg(delta);
  double den = 1.0 - 2.0 * kSqrt2 * delta;
  if (den <= 0.0)
    fail(ErrorCode::DomainError, "noise distance " + std::to_string(delta) +
                                     " at or above 1/(2*sqrt(2))");
  double f1 = marvian_noise_bound(delta);
  double f2 = (2.0 * (1.0 + 2.0 * std::sqrt(3.0)) * delta -
               4.0 * kSqrt2 * delta * delta) / den;
  double margin = f1 - f2;
  return {margin > 0.0, margin};
}

/// Sharper witness floor when the noise is known to be depolarizing.
/// Defined for delta < 1/sqrt(2).
inline double pusey_depol_bound(double delta) {
  detail::check_delta_nonneg(delta);
  double den = 1.0 - kSqrt2 * delta;
  if (den <= 0.0)
    fail(ErrorCode::DomainError, "noise distance " + std::to_string(delta) +
                                     " at or above 1/sqrt(2)");
  return kIdealWitness - 8.0 * delta +
         (8.0 * kSqrt2 * delta * delta - 4.0 * delta) / den;
}

/// Parity-preservation test specialized to depolarizing noise: compares f1
/// against g(delta) = delta + sqrt(2)*delta/(1 - 2*sqrt(2)*delta).
/// Defined for delta < 1/(2*sqrt(2)).
inline ParityCondition parity_depol_condition(double delta) {
  detail::check_delta_nonneg(delta);
  double den = 1.0 - 2.0 * kSqrt2 * delta;
  if (den <= 0.0)
    fail(ErrorCode::DomainError, "noise distance " + std::to_string(delta) +
                                     " at or above 1/(2*sqrt(2))");
  double f1 = marvian_noise_bound(delta);
  double g = delta + kSqrt2 * delta / den;
  double margin = f1 - g;
  return {margin > 0.0, margin};
}

namespace detail {

/// Bisects for the zero of a function that is positive at lo and negative
/// at hi. Brackets are fixed by the callers; no bracket search.
template <class F>
double bisect_root(F f, double lo, double hi, double tol = 1e-9) {
  if (!(f(lo) > 0.0 && f(hi) < 0.0))
    fail(ErrorCode::DomainError, "root bracket does not straddle a sign change");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Largest noise distances at which each witness still certifies
/// nonclassicality (zero-crossings of the five bound expressions).
struct Thresholds {
  double pusey = 0.0;
  double marvian = 0.0;
  double parity = 0.0;
  double pusey_depol = 0.0;
  double parity_depol = 0.0;
};

inline Thresholds solve_thresholds(double tol = 1e-9) {
  Thresholds t;
  t.pusey = detail::bisect_root(pusey_noise_bound, 0.06, 0.07, tol);
  t.marvian = detail::bisect_root(marvian_noise_bound, 0.10, 0.11, tol);
  t.parity = detail::bisect_root(
      [](double d) { return parity_condition(d).margin; }, 0.007, 0.008, tol);
  t.pusey_depol = detail::bisect_root(pusey_depol_bound, 0.07, 0.075, tol);
  t.parity_depol = detail::bisect_root(
      [](double d) { return parity_depol_condition(d).margin; }, 0.02, 0.03, tol);
  return t;
}

/// Which noise family drives the bound-based verdicts.
enum class WitnessMode { plain, depolarizing };

inline const char* to_string(WitnessMode m) {
  return m == WitnessMode::plain ? "plain" : "depolarizing";
}

/// Per-preparation summary line: distance from ideal and the two analytic
/// bounds evaluated at that distance. c_bound is absent outside its domain.
struct WitnessRow {
  PrepLabel label = PrepLabel::p00;
  PrepVector v;
  double d = 0.0;
  double s_bound = 0.0;
  std::optional<double> c_bound;
};

/// Depolarizing-noise bounds at the aggregate delta; values absent when
/// delta falls outside the respective domain.
struct DepolBounds {
  std::optional<double> pusey_value;
  std::optional<double> parity_margin;
};

/// One boolean per witness. pusey_bound and parity follow the report mode
/// (plain or depolarizing family); out-of-domain bounds count as not
/// violated.
struct WitnessVerdicts {
  bool pusey_raw = false;
  bool pusey_bound = false;
  bool marvian = false;
  bool parity = false;
};

/// Everything the analytic witnesses can say about one quad.
struct WitnessReport {
  WitnessMode mode = WitnessMode::plain;
  std::array<WitnessRow, 4> rows{};
  double delta = 0.0;
  EquivalenceWeights weights;
  double s_raw = 0.0;
  double s_bound = 0.0;
  std::optional<double> c_prep_bound;
  std::optional<double> parity_margin;
  bool parity_violated = false;
  std::optional<DepolBounds> depol;
  WitnessVerdicts verdicts;
};

inline WitnessReport build_report(const PreparationQuad& quad,
                                  const EquivalenceWeights& w,
                                  WitnessMode mode = WitnessMode::plain) {
  auto try_marvian = [](double d) -> std::optional<double> {
    if (d >= kSqrt2 / 4.0) return std::nullopt;
    return marvian_noise_bound(d);
  };
  auto try_parity = [](double d) -> std::optional<double> {
    if (d >= 1.0 / (2.0 * kSqrt2)) return std::nullopt;
    return parity_condition(d).margin;
  };

  WitnessReport r;
  r.mode = mode;
  r.weights = w;
  r.s_raw = pusey_raw(quad, w);
  for (PrepLabel l : kPrepLabels) {
    WitnessRow& row = r.rows[static_cast<int>(l)];
    row.label = l;
    row.v = quad[l];
    row.d = operational_distance(quad[l], ideal_vector(l));
    row.s_bound = pusey_noise_bound(row.d);
    row.c_bound = try_marvian(row.d);
    r.delta = std::max(r.delta, row.d);
  }
  r.s_bound = pusey_noise_bound(r.delta);
  r.c_prep_bound = try_marvian(r.delta);
  r.parity_margin = try_parity(r.delta);
  r.parity_violated = r.parity_margin && *r.parity_margin > 0.0;

  if (mode == WitnessMode::depolarizing) {
    DepolBounds d;
    if (r.delta < 1.0 / kSqrt2) d.pusey_value = pusey_depol_bound(r.delta);
    if (r.delta < 1.0 / (2.0 * kSqrt2))
      d.parity_margin = parity_depol_condition(r.delta).margin;
    r.depol = d;
  }

  r.verdicts.pusey_raw = r.s_raw > 0.0;
  r.verdicts.marvian = r.c_prep_bound && *r.c_prep_bound > 0.0;
  if (mode == WitnessMode::plain) {
    r.verdicts.pusey_bound = r.s_bound > 0.0;
    r.verdicts.parity = r.parity_violated;
  } else {
    r.verdicts.pusey_bound = r.depol->pusey_value && *r.depol->pusey_value > 0.0;
    r.verdicts.parity = r.depol->parity_margin && *r.depol->parity_margin > 0.0;
  }
  return r;
}

}  // namespace simplest
