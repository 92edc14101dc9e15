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
#include <complex>
#include <numbers>

#include "simplest/bloch.hpp"
#include "simplest/errors.hpp"

namespace simplest {

using Complex = std::complex<double>;

/// Normalized two-component polarization amplitude (H, V basis).
struct JonesState {
  Complex h{1.0, 0.0};
  Complex v{0.0, 0.0};

  double norm2() const { return std::norm(h) + std::norm(v); }
};

/// 2x2 complex operator acting on JonesState, row-major.
struct JonesMatrix {
  std::array<Complex, 4> m{};  // [ m00 m01 ; m10 m11 ]
};

/// Quarter-wave plate with fast axis at angle theta from horizontal.
/// Convention: QWP(0) = diag(1, i), no global phase factored out.
inline JonesMatrix qwp(double theta) {
  const Complex i(0.0, 1.0);
  double c = std::cos(theta), s = std::sin(theta);
  JonesMatrix w;
  w.m[0] = c * c + i * s * s;
  w.m[1] = (1.0 - i) * s * c;
  w.m[2] = (1.0 - i) * s * c;
  w.m[3] = s * s + i * c * c;
  return w;
}

/// Half-wave plate with fast axis at angle alpha from horizontal.
/// Convention: HWP(0) = diag(1, -1); real and involutive.
inline JonesMatrix hwp(double alpha) {
  double c = std::cos(2.0 * alpha), s = std::sin(2.0 * alpha);
  JonesMatrix w;
  w.m[0] = c;
  w.m[1] = s;
  w.m[2] = s;
  w.m[3] = -c;
  return w;
}

/// Applies the operator and renormalizes to absorb rounding drift.
inline JonesState apply(const JonesMatrix& w, const JonesState& s) {
  JonesState out;
  out.h = w.m[0] * s.h + w.m[1] * s.v;
  out.v = w.m[2] * s.h + w.m[3] * s.v;
  double n = std::sqrt(out.norm2());
  if (n <= 0.0) fail(ErrorCode::DomainError, "waveplate output has zero norm");
  out.h /= n;
  out.v /= n;
  return out;
}

/// Applies a circuit in listed order: the first element acts first.
inline JonesState apply(std::initializer_list<JonesMatrix> circuit, JonesState s) {
  for (const JonesMatrix& w : circuit) s = apply(w, s);
  return s;
}

/// Projection probabilities onto the three standard polarization bases.
struct SixProbs {
  double p_h = 0.0, p_v = 0.0;  // horizontal / vertical
  double p_d = 0.0, p_a = 0.0;  // diagonal / antidiagonal
  double p_r = 0.0, p_l = 0.0;  // right / left circular
};

/// Projective tomography of a pure state. Circular convention:
/// |R> = (|H> + i|V>)/sqrt(2), so p_R = |a_H - i a_V|^2 / 2.
inline SixProbs tomography(const JonesState& s) {
  if (std::fabs(s.norm2() - 1.0) > 1e-9)
    fail(ErrorCode::NonNormalized,
         "state norm^2 is " + std::to_string(s.norm2()) + ", expected 1");
  const Complex i(0.0, 1.0);
  SixProbs p;
  p.p_h = std::norm(s.h);
  p.p_v = std::norm(s.v);
  p.p_d = 0.5 * std::norm(s.h + s.v);
  p.p_a = 0.5 * std::norm(s.h - s.v);
  p.p_r = 0.5 * std::norm(s.h - i * s.v);
  p.p_l = 0.5 * std::norm(s.h + i * s.v);
  return p;
}

/// Disk point of a pure state: (p_D - p_A, p_R - p_L).
inline PrepVector stokes_xy(const JonesState& s) {
  SixProbs p = tomography(s);
  return {p.p_d - p.p_a, p.p_r - p.p_l};
}

/// z-component of the Bloch vector, p_H - p_V. Zero on the equator.
inline double stokes_z(const JonesState& s) {
  SixProbs p = tomography(s);
  return p.p_h - p.p_v;
}

/// Waveplate settings (QWP angle, then HWP angle) for one preparation.
struct PlateAngles {
  double qwp = 0.0;
  double hwp = 0.0;
};

inline constexpr double kPi = std::numbers::pi;

/// Plate settings as they appear in the source hardware table, in its
/// original row order 00, 01, 10, 11. With the conventions above, the 01
/// and 10 rows of this table produce each other's target vectors.
inline PlateAngles listed_angles(PrepLabel l) {
  switch (l) {
    case PrepLabel::p00: return {kPi / 8.0, 3.0 * kPi / 16.0};
    case PrepLabel::p01: return {kPi / 8.0, -kPi / 16.0};
    case PrepLabel::p10: return {-kPi / 8.0, kPi / 16.0};
    case PrepLabel::p11: return {-kPi / 8.0, 5.0 * kPi / 16.0};
  }
  return {};
}

/// Plate settings keyed by the disk point they actually prepare:
/// assigned_angles(l) drives a horizontally polarized input to
/// ideal_vector(l). This swaps the 01 and 10 rows of listed_angles.
inline PlateAngles assigned_angles(PrepLabel l) {
  switch (l) {
    case PrepLabel::p00: return {kPi / 8.0, 3.0 * kPi / 16.0};
    case PrepLabel::p01: return {-kPi / 8.0, kPi / 16.0};
    case PrepLabel::p10: return {kPi / 8.0, -kPi / 16.0};
    case PrepLabel::p11: return {-kPi / 8.0, 5.0 * kPi / 16.0};
  }
  return {};
}

/// Sends horizontally polarized light through QWP(angles.qwp) followed by
/// HWP(angles.hwp).
inline JonesState prepare(PlateAngles angles) {
  return apply({qwp(angles.qwp), hwp(angles.hwp)}, JonesState{});
}

/// Prepares the labeled state; its disk point is ideal_vector(label) up to
/// rounding.
inline JonesState prepare(PrepLabel label) { return prepare(assigned_angles(label)); }

/// Disk image of mixing a pure preparation with the maximally mixed state:
/// vector = (1 - a) * (pure-state vector).
struct DepolarizedState {
  PrepVector vector;
  double a = 0.0;
};

/// Shrinks a disk point toward the origin by factor (1 - a).
inline PrepVector depolarize(PrepVector v, double a) {
  if (!(a >= 0.0 && a <= 1.0))
    fail(ErrorCode::OutOfRange, "depolarization strength " + std::to_string(a) +
                                    " outside [0, 1]");
  return (1.0 - a) * v;
}

inline PreparationQuad depolarize(const PreparationQuad& quad, double a) {
  PreparationQuad out;
  for (PrepLabel l : kPrepLabels) out[l] = depolarize(quad[l], a);
  return out;
}

inline DepolarizedState depolarized(PrepVector pure, double a) {
  return {depolarize(pure, a), a};
}

/// Depolarization strength of the two-half-wave-plate scrambler as a
/// function of the plate offset angle beta (radians): a = sin^2(2*beta).
inline double beta_to_a(double beta) {
  double s = std::sin(2.0 * beta);
  return s * s;
}

/// Quad produced by the plate settings, optionally depolarized.
/// When use_listed_order is true the hardware-table row order is used
/// as-is, so the 01 and 10 vectors land swapped relative to their labels.
inline PreparationQuad simulated_quad(double a = 0.0, bool use_listed_order = false) {
  PreparationQuad quad;
  for (PrepLabel l : kPrepLabels) {
    PlateAngles angles = use_listed_order ? listed_angles(l) : assigned_angles(l);
    quad[l] = stokes_xy(prepare(angles));
  }
  return a == 0.0 ? quad : depolarize(quad, a);
}

}  // namespace simplest
