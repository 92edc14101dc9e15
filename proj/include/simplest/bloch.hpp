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
#include <string>
#include <string_view>

#include "simplest/errors.hpp"

namespace simplest {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// Disk membership is accepted up to x^2 + y^2 <= 1 + kDiskTolerance;
/// points beyond signal inconsistent tomography data.
inline constexpr double kDiskTolerance = 1e-9;

/// Default tolerance for a probability pair summing to 1 (simulated data).
inline constexpr double kProbTolerance = 1e-6;

/// The four preparations of the scenario, indexed by their two-bit name.
enum class PrepLabel { p00 = 0, p01 = 1, p10 = 2, p11 = 3 };

inline constexpr std::array<PrepLabel, 4> kPrepLabels = {
    PrepLabel::p00, PrepLabel::p01, PrepLabel::p10, PrepLabel::p11};

inline const char* to_string(PrepLabel l) {
  switch (l) {
    case PrepLabel::p00: return "00";
    case PrepLabel::p01: return "01";
    case PrepLabel::p10: return "10";
    case PrepLabel::p11: return "11";
  }
  return "??";
}

inline PrepLabel prep_label_from_string(std::string_view s) {
  if (s == "00") return PrepLabel::p00;
  if (s == "01") return PrepLabel::p01;
  if (s == "10") return PrepLabel::p10;
  if (s == "11") return PrepLabel::p11;
  fail(ErrorCode::UnknownLabel,
       "unknown preparation label '" + std::string(s) + "' (expected 00/01/10/11)");
}

/// A point of the equatorial Bloch disk seen through the two binary
/// measurements: x = P(0|X) - P(1|X), y = P(0|Y) - P(1|Y).
struct PrepVector {
  double x = 0.0;
  double y = 0.0;
};

inline PrepVector operator+(PrepVector a, PrepVector b) { return {a.x + b.x, a.y + b.y}; }
inline PrepVector operator-(PrepVector a, PrepVector b) { return {a.x - b.x, a.y - b.y}; }
inline PrepVector operator*(double s, PrepVector v) { return {s * v.x, s * v.y}; }

inline double infinity_norm(PrepVector v) {
  return std::max(std::fabs(v.x), std::fabs(v.y));
}

inline void ensure_in_disk(PrepVector v, double tol_geom = kDiskTolerance) {
  double n2 = v.x * v.x + v.y * v.y;
  if (n2 > 1.0 + tol_geom)
    fail(ErrorCode::OutOfRange, "point (" + std::to_string(v.x) + ", " +
                                    std::to_string(v.y) + ") lies outside the Bloch disk");
}

/// The four preparation vectors of one run, by label.
struct PreparationQuad {
  PrepVector p00, p01, p10, p11;

  const PrepVector& operator[](PrepLabel l) const {
    switch (l) {
      case PrepLabel::p00: return p00;
      case PrepLabel::p01: return p01;
      case PrepLabel::p10: return p10;
      case PrepLabel::p11: return p11;
    }
    return p00;
  }
  PrepVector& operator[](PrepLabel l) {
    return const_cast<PrepVector&>(static_cast<const PreparationQuad&>(*this)[l]);
  }
};

/// Solution of p*P00 + (1-p)*P11 = q*P01 + (1-q)*P10 = c.
/// residual is the infinity-norm mismatch of the two sides at (p, q).
struct EquivalenceWeights {
  double p = 0.5;
  double q = 0.5;
  PrepVector c;
  double residual = 0.0;
};

/// Even/odd-parity mixtures of the quad.
struct ParityMixtures {
  PrepVector plus;   // mixture of P00 and P11
  PrepVector minus;  // mixture of P01 and P10
};

/// Outcome probabilities of the two disk measurements for one preparation.
struct DiskProbs {
  double p_d = 0.0, p_a = 0.0;  // X measurement, outcomes 0 and 1
  double p_r = 0.0, p_l = 0.0;  // Y measurement, outcomes 0 and 1
};

/// Per-preparation distances from the ideal quad, plus their maximum.
struct NoiseDeltas {
  std::array<double, 4> per_prep{};  // indexed by PrepLabel
  double max = 0.0;
};

/// Maps measured outcome probabilities to a disk point.
/// Each pair must normalize within tol_prob; the resulting point must lie
/// in the disk within tol_geom.
inline PrepVector stokes_from_probs(double p_d, double p_a, double p_r, double p_l,
                                    double tol_prob = kProbTolerance,
                                    double tol_geom = kDiskTolerance) {
  for (double v : {p_d, p_a, p_r, p_l})
    if (!(v >= 0.0 && v <= 1.0))
      fail(ErrorCode::OutOfRange, "probability " + std::to_string(v) + " outside [0, 1]");
  if (std::fabs(p_d + p_a - 1.0) > tol_prob)
    fail(ErrorCode::NonNormalized,
         "X-basis pair sums to " + std::to_string(p_d + p_a) + ", expected 1");
  if (std::fabs(p_r + p_l - 1.0) > tol_prob)
    fail(ErrorCode::NonNormalized,
         "Y-basis pair sums to " + std::to_string(p_r + p_l) + ", expected 1");
  PrepVector v{p_d - p_a, p_r - p_l};
  ensure_in_disk(v, tol_geom);
  return v;
}

/// Inverse of stokes_from_probs on the disk.
inline DiskProbs probs_from_vector(PrepVector v, double tol_geom = kDiskTolerance) {
  ensure_in_disk(v, tol_geom);
  return {(1.0 + v.x) / 2.0, (1.0 - v.x) / 2.0, (1.0 + v.y) / 2.0, (1.0 - v.y) / 2.0};
}

/// Operational distance on the disk: half the infinity norm of the
/// difference. Equals the largest probability gap any of the two
/// measurements can see between the preparations.
inline double operational_distance(PrepVector a, PrepVector b) {
  return 0.5 * infinity_norm(a - b);
}

inline PrepVector ideal_vector(PrepLabel l) {
  switch (l) {
    case PrepLabel::p00: return {kInvSqrt2, kInvSqrt2};
    case PrepLabel::p01: return {kInvSqrt2, -kInvSqrt2};
    case PrepLabel::p10: return {-kInvSqrt2, kInvSqrt2};
    case PrepLabel::p11: return {-kInvSqrt2, -kInvSqrt2};
  }
  return {};
}

inline PreparationQuad ideal_quad() {
  return {ideal_vector(PrepLabel::p00), ideal_vector(PrepLabel::p01),
          ideal_vector(PrepLabel::p10), ideal_vector(PrepLabel::p11)};
}

inline NoiseDeltas noise_deltas(const PreparationQuad& quad,
                                const PreparationQuad& reference = ideal_quad()) {
  NoiseDeltas out;
  for (PrepLabel l : kPrepLabels) {
    double d = operational_distance(quad[l], reference[l]);
    out.per_prep[static_cast<int>(l)] = d;
    out.max = std::max(out.max, d);
  }
  return out;
}

/// Maximum distance of the quad from the ideal preparations.
inline double noise_delta(const PreparationQuad& quad,
                          const PreparationQuad& reference = ideal_quad()) {
  return noise_deltas(quad, reference).max;
}

namespace detail {

template <class T>
struct Vec2 {
  T x, y;
};

enum class EqStatus { ok, no_equivalence, degenerate };

template <class T>
struct EqSolution {
  EqStatus status = EqStatus::no_equivalence;
  T p{}, q{};
};

/// Solves p*v00 + (1-p)*v11 = q*v01 + (1-q)*v10 for p, q in [0, 1] over an
/// ordered field. zero_tol scales the singularity test (pass 0 for exact
/// fields); range_tol widens the [0, 1] acceptance band and clamps.
///
/// Singular cases: coincident mixture lines are recovered by returning the
/// solution minimizing |p - 1/2| + |q - 1/2| (ties: smaller |p - 1/2|, then
/// smaller q); parallel distinct lines or non-crossing segments report
/// no_equivalence; two zero-length segments at distinct points are
/// degenerate.
template <class T>
EqSolution<T> solve_mixture_weights(Vec2<T> v00, Vec2<T> v01, Vec2<T> v10, Vec2<T> v11,
                                    const T& zero_tol, const T& range_tol) {
  // By-value parameter forces boost expression templates to collapse to T.
  auto abs_v = [](T v) { return v < T(0) ? T(-v) : v; };
  const T half = T(1) / T(2);
  Vec2<T> d0{T(v00.x - v11.x), T(v00.y - v11.y)};
  Vec2<T> d1{T(v01.x - v10.x), T(v01.y - v10.y)};
  Vec2<T> r{T(v10.x - v11.x), T(v10.y - v11.y)};

  auto in_range = [&](const T& v) { return v >= -range_tol && v <= T(1) + range_tol; };
  auto clamp01 = [&](T v) {
    if (v < T(0)) v = T(0);
    if (v > T(1)) v = T(1);
    return v;
  };
  auto accept = [&](T p, T q) {
    EqSolution<T> s;
    if (!in_range(p) || !in_range(q)) return s;  // no_equivalence
    s.status = EqStatus::ok;
    s.p = clamp01(p);
    s.q = clamp01(q);
    return s;
  };

  T det = T(d1.x * d0.y - d0.x * d1.y);
  T d0_mag = T(abs_v(d0.x) + abs_v(d0.y));
  T d1_mag = T(abs_v(d1.x) + abs_v(d1.y));
  T r_mag = T(abs_v(r.x) + abs_v(r.y));
  T scale = std::max(T(1), std::max(d0_mag, d1_mag));
  if (abs_v(det) > T(zero_tol * scale * scale)) {
    T p = T((d1.x * r.y - d1.y * r.x) / det);
    T q = T((d0.x * r.y - d0.y * r.x) / det);
    return accept(p, q);
  }

  // Singular system: d0 and d1 are parallel (or zero). The equation
  // p*d0 - q*d1 = r is solvable only if r lies in their common span.
  T cross0 = T(d0.x * r.y - d0.y * r.x);
  T cross1 = T(d1.x * r.y - d1.y * r.x);
  T rscale = std::max(scale, r_mag);
  T tol2 = T(zero_tol * rscale * rscale);
  bool d0_zero = d0_mag <= T(zero_tol * scale);
  bool d1_zero = d1_mag <= T(zero_tol * scale);
  bool r_zero = r_mag <= T(zero_tol * rscale);

  if (d0_zero && d1_zero) {
    if (r_zero) {  // all four points coincide; any weights work
      EqSolution<T> s;
      s.status = EqStatus::ok;
      s.p = half;
      s.q = half;
      return s;
    }
    EqSolution<T> s;  // two zero-length segments at distinct points
    s.status = EqStatus::degenerate;
    return s;
  }
  if ((!d0_zero && abs_v(cross0) > tol2) || (!d1_zero && abs_v(cross1) > tol2)) {
    return {};  // parallel distinct lines: segments cannot meet
  }

  // Collinear configuration; reduce to the dominant axis.
  bool use_x = T(abs_v(d0.x) + abs_v(d1.x) + abs_v(r.x)) >=
               T(abs_v(d0.y) + abs_v(d1.y) + abs_v(r.y));
  T a = use_x ? d0.x : d0.y;
  T b = use_x ? d1.x : d1.y;
  T e = use_x ? r.x : r.y;

  if (d0_zero) return accept(half, T(-e / b));  // p is free: prefer 1/2
  if (d1_zero) return accept(T(e / a), half);   // q is free: prefer 1/2

  // One-parameter family p = (b*q + e) / a. Feasible q interval within
  // [0, 1], then pick the candidate minimizing |p - 1/2| + |q - 1/2|.
  T qlo = T(0), qhi = T(1);
  {
    // p in [0,1]  <=>  b*q + e between 0 and a (order depends on sign of a).
    T lo_val = a < T(0) ? a : T(0);
    T hi_val = a < T(0) ? T(0) : a;
    T b1 = T((lo_val - e) / b);
    T b2 = T((hi_val - e) / b);
    if (b1 > b2) std::swap(b1, b2);
    if (b1 > qlo) qlo = b1;
    if (b2 < qhi) qhi = b2;
  }
  if (qlo > T(qhi + range_tol)) return {};
  if (qlo > qhi) qhi = qlo;

  auto clamp_interval = [&](T v) {
    if (v < qlo) v = qlo;
    if (v > qhi) v = qhi;
    return v;
  };
  std::array<T, 4> candidates = {qlo, qhi, clamp_interval(half),
                                 clamp_interval(T((a * half - e) / b))};
  EqSolution<T> best;
  T best_obj{}, best_pdev{};
  for (const T& qc : candidates) {
    T pc = T((b * qc + e) / a);
    T pdev = abs_v(T(pc - half));
    T obj = T(pdev + abs_v(T(qc - half)));
    bool better = best.status != EqStatus::ok || obj < best_obj ||
                  (obj == best_obj && (pdev < best_pdev ||
                                       (pdev == best_pdev && qc < best.q)));
    if (better) {
      best.status = EqStatus::ok;
      best.p = clamp01(pc);
      best.q = clamp01(qc);
      best_obj = obj;
      best_pdev = pdev;
    }
  }
  return best;
}

}  // namespace detail

/// Finds the mixture weights p, q realizing the operational equivalence
/// p*P00 + (1-p)*P11 = q*P01 + (1-q)*P10. Fails with NoEquivalence when the
/// two mixture segments do not cross inside weight range [0, 1], and with
/// Degenerate when both segments collapse to distinct points.
inline EquivalenceWeights find_equivalence(const PreparationQuad& quad,
                                           double zero_tol = 1e-12,
                                           double range_tol = 1e-9) {
  using detail::EqStatus;
  auto v = [&](PrepLabel l) { return detail::Vec2<double>{quad[l].x, quad[l].y}; };
  auto sol = detail::solve_mixture_weights<double>(
      v(PrepLabel::p00), v(PrepLabel::p01), v(PrepLabel::p10), v(PrepLabel::p11),
      zero_tol, range_tol);
  if (sol.status == EqStatus::degenerate)
    fail(ErrorCode::Degenerate,
         "both mixture segments are zero-length at distinct points");
  if (sol.status == EqStatus::no_equivalence)
    fail(ErrorCode::NoEquivalence,
         "mixture segments of P00-P11 and P01-P10 do not cross with weights in [0, 1]");
  EquivalenceWeights w;
  w.p = sol.p;
  w.q = sol.q;
  w.c = sol.p * quad.p00 + (1.0 - sol.p) * quad.p11;
  PrepVector other = sol.q * quad.p01 + (1.0 - sol.q) * quad.p10;
  w.residual = infinity_norm(w.c - other);
  return w;
}

/// Half-half parity mixtures (the classical choice for ideal data).
inline ParityMixtures parity_mixtures(const PreparationQuad& quad) {
  return {0.5 * (quad.p00 + quad.p11), 0.5 * (quad.p01 + quad.p10)};
}

/// Parity mixtures with one explicit weight applied to both pairs.
inline ParityMixtures parity_mixtures(const PreparationQuad& quad, double w) {
  if (!(w >= 0.0 && w <= 1.0))
    fail(ErrorCode::OutOfRange, "mixture weight " + std::to_string(w) + " outside [0, 1]");
  return {w * quad.p00 + (1.0 - w) * quad.p11, w * quad.p01 + (1.0 - w) * quad.p10};
}

/// Parity mixtures at the equivalence weights; by construction plus and
/// minus coincide up to the solver residual.
inline ParityMixtures parity_mixtures(const PreparationQuad& quad,
                                      const EquivalenceWeights& w) {
  return {w.p * quad.p00 + (1.0 - w.p) * quad.p11,
          w.q * quad.p01 + (1.0 - w.q) * quad.p10};
}

}  // namespace simplest
