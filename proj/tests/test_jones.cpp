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

#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "simplest/jones.hpp"
#include "test_util.hpp"

using namespace simplest;
using simplest::testing::thrown_code;
using Catch::Matchers::WithinAbs;

namespace {

JonesState random_state(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  JonesState s;
  s.h = Complex(gauss(rng), gauss(rng));
  s.v = Complex(gauss(rng), gauss(rng));
  double n = std::sqrt(s.norm2());
  s.h /= n;
  s.v /= n;
  return s;
}

void check_unitary(const JonesMatrix& u) {
  // Columns of U are orthonormal: U^dagger U = I.
  Complex c00 = std::conj(u.m[0]) * u.m[0] + std::conj(u.m[2]) * u.m[2];
  Complex c11 = std::conj(u.m[1]) * u.m[1] + std::conj(u.m[3]) * u.m[3];
  Complex c01 = std::conj(u.m[0]) * u.m[1] + std::conj(u.m[2]) * u.m[3];
  CHECK_THAT(c00.real(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(c00.imag(), WithinAbs(0.0, 1e-12));
  CHECK_THAT(c11.real(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(c11.imag(), WithinAbs(0.0, 1e-12));
  CHECK_THAT(std::abs(c01), WithinAbs(0.0, 1e-12));
}

}  // namespace

TEST_CASE("waveplates at zero match their diagonal conventions") {
  JonesState h;
  JonesState qh = apply(qwp(0.0), h);
  CHECK_THAT(std::abs(qh.h - Complex(1.0, 0.0)), WithinAbs(0.0, 1e-15));
  CHECK_THAT(std::abs(qh.v), WithinAbs(0.0, 1e-15));

  JonesState s{Complex(0.6, 0.0), Complex(0.8, 0.0)};
  JonesState hs = apply(hwp(0.0), s);
  CHECK_THAT(std::abs(hs.h - Complex(0.6, 0.0)), WithinAbs(0.0, 1e-15));
  CHECK_THAT(std::abs(hs.v - Complex(-0.8, 0.0)), WithinAbs(0.0, 1e-15));
}

TEST_CASE("a half-wave plate at pi/8 turns H into D") {
  JonesState d = apply(hwp(kPi / 8.0), JonesState{});
  CHECK_THAT(std::abs(d.h - Complex(kInvSqrt2, 0.0)), WithinAbs(0.0, 1e-12));
  CHECK_THAT(std::abs(d.v - Complex(kInvSqrt2, 0.0)), WithinAbs(0.0, 1e-12));
}

TEST_CASE("the two-plate circuit reproduces the reference amplitudes") {
  JonesState psi1 = apply(qwp(kPi / 8.0), JonesState{});
  CHECK_THAT(psi1.h.real(), WithinAbs(0.8535533905932738, 1e-12));
  CHECK_THAT(psi1.h.imag(), WithinAbs(0.1464466094067262, 1e-12));
  CHECK_THAT(psi1.v.real(), WithinAbs(0.3535533905932738, 1e-12));
  CHECK_THAT(psi1.v.imag(), WithinAbs(-0.3535533905932738, 1e-12));

  JonesState psi2 = apply(hwp(3.0 * kPi / 16.0), psi1);
  CHECK_THAT(psi2.h.real(), WithinAbs(0.6532814824381883, 1e-12));
  CHECK_THAT(psi2.h.imag(), WithinAbs(-0.2705980500730985, 1e-12));
  CHECK_THAT(psi2.v.real(), WithinAbs(0.6532814824381883, 1e-12));
  CHECK_THAT(psi2.v.imag(), WithinAbs(0.2705980500730985, 1e-12));

  SixProbs p = tomography(psi2);
  CHECK_THAT(p.p_h, WithinAbs(0.5, 1e-12));
  CHECK_THAT(p.p_d, WithinAbs(0.8535533905932738, 1e-12));
  CHECK_THAT(p.p_r, WithinAbs(0.8535533905932738, 1e-12));
}

TEST_CASE("waveplate matrices are unitary at random angles") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    check_unitary(qwp(angle(rng)));
    check_unitary(hwp(angle(rng)));
  }
}

TEST_CASE("half-wave plates are involutions") {
  std::mt19937 rng(32);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    double alpha = angle(rng);
    JonesState s = random_state(rng);
    JonesState back = apply({hwp(alpha), hwp(alpha)}, s);
    CHECK_THAT(std::abs(back.h - s.h), WithinAbs(0.0, 1e-12));
    CHECK_THAT(std::abs(back.v - s.v), WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("an empty circuit leaves the state unchanged") {
  JonesState s{Complex(0.6, 0.0), Complex(0.0, 0.8)};
  JonesState out = apply({}, s);
  CHECK(out.h == s.h);
  CHECK(out.v == s.v);
}

TEST_CASE("tomography outcomes are normalized per basis") {
  std::mt19937 rng(33);
  for (int i = 0; i < 10000; ++i) {
    SixProbs p = tomography(random_state(rng));
    CHECK_THAT(p.p_h + p.p_v, WithinAbs(1.0, 1e-12));
    CHECK_THAT(p.p_d + p.p_a, WithinAbs(1.0, 1e-12));
    CHECK_THAT(p.p_r + p.p_l, WithinAbs(1.0, 1e-12));
    CHECK(p.p_h >= 0.0);
    CHECK(p.p_d >= 0.0);
    CHECK(p.p_r >= 0.0);
  }
}

TEST_CASE("pure states sit on the Bloch sphere surface") {
  std::mt19937 rng(34);
  for (int i = 0; i < 1000; ++i) {
    JonesState s = random_state(rng);
    PrepVector xy = stokes_xy(s);
    double z = stokes_z(s);
    CHECK_THAT(xy.x * xy.x + xy.y * xy.y + z * z, WithinAbs(1.0, 1e-10));
  }
}

TEST_CASE("tomography rejects unnormalized input") {
  JonesState bad;
  bad.h = Complex(1.0, 0.0);
  bad.v = Complex(1.0, 0.0);
  CHECK(thrown_code([&] { tomography(bad); }) == ErrorCode::NonNormalized);
}

TEST_CASE("assigned plate angles prepare the ideal quad") {
  for (PrepLabel l : kPrepLabels) {
    JonesState s = prepare(l);
    PrepVector v = stokes_xy(s);
    PrepVector want = ideal_vector(l);
    CHECK_THAT(v.x, WithinAbs(want.x, 1e-10));
    CHECK_THAT(v.y, WithinAbs(want.y, 1e-10));
    CHECK_THAT(stokes_z(s), WithinAbs(0.0, 1e-12));
  }
  CHECK(noise_delta(simulated_quad()) < 1e-10);
}

TEST_CASE("the published angle listing swaps the odd-parity rows") {
  for (PrepLabel l : {PrepLabel::p00, PrepLabel::p11}) {
    PlateAngles a = assigned_angles(l);
    PlateAngles b = listed_angles(l);
    CHECK(a.qwp == b.qwp);
    CHECK(a.hwp == b.hwp);
  }
  // Under the listing, the 01 row lands on the 10 point and vice versa.
  PrepVector v01 = stokes_xy(prepare(listed_angles(PrepLabel::p01)));
  PrepVector v10 = stokes_xy(prepare(listed_angles(PrepLabel::p10)));
  CHECK_THAT(v01.x, WithinAbs(ideal_vector(PrepLabel::p10).x, 1e-10));
  CHECK_THAT(v01.y, WithinAbs(ideal_vector(PrepLabel::p10).y, 1e-10));
  CHECK_THAT(v10.x, WithinAbs(ideal_vector(PrepLabel::p01).x, 1e-10));
  CHECK_THAT(v10.y, WithinAbs(ideal_vector(PrepLabel::p01).y, 1e-10));

  PreparationQuad listed = simulated_quad(0.0, true);
  CHECK(infinity_norm(listed.p01 - ideal_vector(PrepLabel::p10)) < 1e-10);
  CHECK(infinity_norm(listed.p10 - ideal_vector(PrepLabel::p01)) < 1e-10);
}

TEST_CASE("specific assigned angles match the hardware table") {
  PlateAngles a00 = assigned_angles(PrepLabel::p00);
  CHECK(a00.qwp == kPi / 8.0);
  CHECK(a00.hwp == 3.0 * kPi / 16.0);
  PlateAngles a01 = assigned_angles(PrepLabel::p01);
  CHECK(a01.qwp == -kPi / 8.0);
  CHECK(a01.hwp == kPi / 16.0);
  PlateAngles a10 = assigned_angles(PrepLabel::p10);
  CHECK(a10.qwp == kPi / 8.0);
  CHECK(a10.hwp == -kPi / 16.0);
  PlateAngles a11 = assigned_angles(PrepLabel::p11);
  CHECK(a11.qwp == -kPi / 8.0);
  CHECK(a11.hwp == 5.0 * kPi / 16.0);
}

TEST_CASE("depolarization shrinks vectors toward the origin") {
  PrepVector v{0.6, -0.4};
  PrepVector d0 = depolarize(v, 0.0);
  CHECK(d0.x == v.x);
  CHECK(d0.y == v.y);
  PrepVector d1 = depolarize(v, 1.0);
  CHECK(d1.x == 0.0);
  CHECK(d1.y == 0.0);
  PrepVector dh = depolarize(v, 0.5);
  CHECK_THAT(dh.x, WithinAbs(0.3, 1e-15));
  CHECK_THAT(dh.y, WithinAbs(-0.2, 1e-15));
  CHECK(thrown_code([&] { depolarize(v, -0.1); }) == ErrorCode::OutOfRange);
  CHECK(thrown_code([&] { depolarize(v, 1.1); }) == ErrorCode::OutOfRange);

  DepolarizedState ds = depolarized(v, 0.25);
  CHECK(ds.a == 0.25);
  CHECK_THAT(ds.vector.x, WithinAbs(0.45, 1e-15));
}

TEST_CASE("depolarized quads keep the balanced equivalence") {
  for (double a : {0.0, 0.2, 0.5, 0.8}) {
    EquivalenceWeights w = find_equivalence(depolarize(ideal_quad(), a));
    CHECK_THAT(w.p, WithinAbs(0.5, 1e-9));
    CHECK_THAT(w.q, WithinAbs(0.5, 1e-9));
  }
}

TEST_CASE("scrambler offsets map to depolarizing weights") {
  CHECK(beta_to_a(0.0) == 0.0);
  CHECK_THAT(beta_to_a(kPi / 4.0), WithinAbs(1.0, 1e-15));
  const double deg = kPi / 180.0;
  CHECK_THAT(beta_to_a(1.0 * deg), WithinAbs(0.00121797487008788, 1e-15));
  CHECK_THAT(beta_to_a(2.0 * deg), WithinAbs(0.00486596562921484, 1e-15));
  CHECK_THAT(beta_to_a(3.0 * deg), WithinAbs(0.0109261996330972, 1e-15));
  CHECK_THAT(beta_to_a(4.0 * deg), WithinAbs(0.0193691520308406, 1e-15));
  CHECK_THAT(beta_to_a(5.0 * deg), WithinAbs(0.0301536896070458, 1e-15));
  CHECK_THAT(beta_to_a(6.0 * deg), WithinAbs(0.0432272711786996, 1e-15));
  CHECK_THAT(beta_to_a(7.0 * deg), WithinAbs(0.0585262035705365, 1e-15));
  for (int k = 1; k < 45; ++k)
    CHECK(beta_to_a(k * deg) > beta_to_a((k - 1) * deg));
}

TEST_CASE("simulated quads depolarize uniformly") {
  PreparationQuad pure = simulated_quad();
  PreparationQuad mixed = simulated_quad(0.3);
  for (PrepLabel l : kPrepLabels) {
    CHECK_THAT(mixed[l].x, WithinAbs(0.7 * pure[l].x, 1e-15));
    CHECK_THAT(mixed[l].y, WithinAbs(0.7 * pure[l].y, 1e-15));
  }
  // Depolarization by a shifts every preparation by a/(2*sqrt(2)).
  CHECK_THAT(noise_delta(mixed), WithinAbs(0.3 * kInvSqrt2 / 2.0, 1e-10));
}
