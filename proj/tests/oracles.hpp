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

// Test-side oracles, independent of the simplex code under test.
//
// A response function over the four ontic states is fixed by the two
// marginals and one free parameter t = mu(0,0). Nonnegativity confines t
// to a closed interval per preparation, so noncontextual-model existence
// reduces to a one-dimensional interval intersection and the minimum
// parity total-variation distance to twice the interval gap. Tests assert
// exact rational equality between this reduction and the LP answers.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "simplest/bloch.hpp"
#include "simplest/jones.hpp"
#include "simplest/ontic.hpp"

namespace simplest::oracle {

struct Interval {
  Rational lo, hi;
};

/// Feasible range of mu(0,0) for a point (x, y): the three remaining
/// masses are (1+x)/2 - t, (1+y)/2 - t and t - (x+y)/2.
inline Interval t_range(const RationalVector& v) {
  Rational lo = (v.x + v.y) / 2;
  if (lo < 0) lo = 0;
  Rational hi = (1 + (v.x < v.y ? v.x : v.y)) / 2;
  return {lo, hi};
}

/// mu(0,0) of the even-parity mixture ranges over the weighted sum of the
/// endpoint intervals; likewise for the odd-parity mixture.
inline Interval mixture_range(Interval a, Interval b, const Rational& w) {
  return {w * a.lo + (1 - w) * b.lo, w * a.hi + (1 - w) * b.hi};
}

inline Interval even_range(const RationalQuad& g, const ExactWeights& w) {
  return mixture_range(t_range(g.p00), t_range(g.p11), w.p);
}

inline Interval odd_range(const RationalQuad& g, const ExactWeights& w) {
  return mixture_range(t_range(g.p01), t_range(g.p10), w.q);
}

/// Signed separation of the two intervals; zero when they intersect.
inline Rational interval_gap(Interval a, Interval b) {
  Rational gap = a.lo > b.hi ? Rational(a.lo - b.hi) : Rational(0);
  if (b.lo > a.hi && b.lo - a.hi > gap) gap = b.lo - a.hi;
  return gap;
}

inline bool box_feasible(const RationalQuad& g, const ExactWeights& w) {
  return interval_gap(even_range(g, w), odd_range(g, w)) == 0;
}

/// Mixtures sharing marginals differ only in the free parameter, so their
/// total-variation distance is exactly 2|t_even - t_odd|.
inline Rational box_min_tv(const RationalQuad& g, const ExactWeights& w) {
  return 2 * interval_gap(even_range(g, w), odd_range(g, w));
}

inline void clamp_to_disk(PrepVector& v) {
  double n2 = v.x * v.x + v.y * v.y;
  if (n2 > 1.0) {
    double s = (1.0 - 1e-12) / std::sqrt(n2);
    v.x *= s;
    v.y *= s;
  }
}

/// Draws quads from the noisy depolarized-ideal family: a uniform
/// depolarizing weight, independent per-coordinate offsets in [-0.2, 0.2],
/// then a radial clamp into the disk. Quads without an equivalence
/// decomposition are redrawn.
class FamilyGenerator {
 public:
  explicit FamilyGenerator(std::uint32_t seed) : rng_(seed) {}

  PreparationQuad next() {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> offs(-0.2, 0.2);
    for (;;) {
      PreparationQuad quad = depolarize(ideal_quad(), unif(rng_));
      for (PrepLabel l : kPrepLabels) {
        PrepVector& v = quad[l];
        v.x += offs(rng_);
        v.y += offs(rng_);
        clamp_to_disk(v);
      }
      try {
        (void)find_equivalence(quad);
      } catch (const Error&) {
        continue;
      }
      return quad;
    }
  }

 private:
  std::mt19937 rng_;
};

}  // namespace simplest::oracle
