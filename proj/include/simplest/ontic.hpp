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
#include <optional>
#include <string>

#include "simplest/bloch.hpp"
#include "simplest/errors.hpp"
#include "simplest/rational.hpp"
#include "simplest/simplex.hpp"
#include "simplest/witness.hpp"

namespace simplest {

// The ontic space is the four deterministic joint responses
// lambda = (X outcome, Y outcome), indexed 0:(0,0) 1:(0,1) 2:(1,0) 3:(1,1).
// Any ontological model of two binary measurements dilates to one with
// deterministic responses, and only the joint-response cell of an ontic
// state affects the constraints, so this space loses no generality.

/// Probability mass over the four ontic states; exact entries.
struct OnticDistribution {
  std::array<Rational, 4> mass{};
};

struct RationalVector {
  Rational x, y;
};

/// A preparation quad snapped to exact rational coordinates.
struct RationalQuad {
  RationalVector p00, p01, p10, p11;

  const RationalVector& operator[](PrepLabel l) const {
    switch (l) {
      case PrepLabel::p00: return p00;
      case PrepLabel::p01: return p01;
      case PrepLabel::p10: return p10;
      case PrepLabel::p11: return p11;
    }
    return p00;
  }
};

/// Exact mixture weights for the quantized quad.
struct ExactWeights {
  Rational p, q;
};

inline RationalQuad quantize_quad(const PreparationQuad& quad,
                                  long long den = kQuantDenominator) {
  auto qv = [&](PrepVector v) { return RationalVector{quantize(v.x, den), quantize(v.y, den)}; };
  return {qv(quad.p00), qv(quad.p01), qv(quad.p10), qv(quad.p11)};
}

/// Re-solves the mixture weights exactly on the quantized coordinates.
/// Quantizing weights found on the double-precision quad would break the
/// exact mixture equality, so the weights are always re-derived here.
inline ExactWeights exact_equivalence(const RationalQuad& quad) {
  using detail::EqStatus;
  auto v = [&](PrepLabel l) { return detail::Vec2<Rational>{quad[l].x, quad[l].y}; };
  auto sol = detail::solve_mixture_weights<Rational>(
      v(PrepLabel::p00), v(PrepLabel::p01), v(PrepLabel::p10), v(PrepLabel::p11),
      Rational(0), Rational(0));
  if (sol.status == EqStatus::degenerate)
    fail(ErrorCode::Degenerate,
         "both mixture segments are zero-length at distinct points");
  if (sol.status == EqStatus::no_equivalence)
    fail(ErrorCode::NoEquivalence,
         "quantized mixture segments do not cross with weights in [0, 1]");
  return {sol.p, sol.q};
}

/// Exact value of the raw noncontextuality witness on the quantized quad.
inline Rational exact_pusey_raw(const RationalQuad& g, const ExactWeights& w) {
  return w.p * (g.p00.x + g.p00.y + g.p11.x + g.p11.y) +
         w.q * (g.p01.x - g.p01.y + g.p10.x - g.p10.y) +
         (g.p10.y - g.p10.x - g.p11.x - g.p11.y) - 2;
}

/// Exact operational distance between the half-half parity mixtures.
inline Rational exact_parity_distance(const RationalQuad& g) {
  Rational dx = (g.p00.x + g.p11.x) - (g.p01.x + g.p10.x);
  Rational dy = (g.p00.y + g.p11.y) - (g.p01.y + g.p10.y);
  if (dx < 0) dx = -dx;
  if (dy < 0) dy = -dy;
  // Mixtures carry a factor 1/2 and the distance another: 1/4 total.
  return (dx > dy ? dx : dy) / 4;
}

namespace detail {

// Variable layout: mu[ij][lambda] at 4*ij + lambda for the four labels in
// PrepLabel order. The TV program appends z at 16..19, then slack pairs.
inline constexpr int kMuVars = 16;

/// Rows shared by both programs: normalization and the two marginals of
/// every label. X-marginal sums lambda in {0,1}; Y-marginal lambda in {0,2}.
inline void add_marginal_rows(lp::Problem& p, const RationalQuad& quad, int width) {
  for (int ij = 0; ij < 4; ++ij) {
    const RationalVector& v = quad[kPrepLabels[ij]];
    std::vector<Rational> norm(width, Rational(0));
    std::vector<Rational> mx(width, Rational(0));
    std::vector<Rational> my(width, Rational(0));
    for (int lam = 0; lam < 4; ++lam) norm[4 * ij + lam] = 1;
    mx[4 * ij + 0] = 1;
    mx[4 * ij + 1] = 1;
    my[4 * ij + 0] = 1;
    my[4 * ij + 2] = 1;
    p.rows.push_back(norm);
    p.rhs.push_back(Rational(1));
    p.rows.push_back(mx);
    p.rhs.push_back((1 + v.x) / 2);
    p.rows.push_back(my);
    p.rhs.push_back((1 + v.y) / 2);
  }
}

/// Coefficients of nu_plus(lambda) - nu_minus(lambda) over the mu block.
inline void add_mixture_delta(std::vector<Rational>& row, const ExactWeights& w,
                              int lam, const Rational& scale) {
  row[4 * 0 + lam] += scale * w.p;              // p00
  row[4 * 3 + lam] += scale * (1 - w.p);        // p11
  row[4 * 1 + lam] -= scale * w.q;              // p01
  row[4 * 2 + lam] -= scale * (1 - w.q);        // p10
}

}  // namespace detail

/// Feasibility program: does a noncontextual model exist? 16 variables,
/// 12 marginal rows plus 4 exact mixture-equality rows, zero objective.
inline lp::Problem feasibility_problem(const RationalQuad& quad, const ExactWeights& w) {
  lp::Problem p;
  p.cost.assign(detail::kMuVars, Rational(0));
  detail::add_marginal_rows(p, quad, detail::kMuVars);
  for (int lam = 0; lam < 4; ++lam) {
    std::vector<Rational> row(detail::kMuVars, Rational(0));
    detail::add_mixture_delta(row, w, lam, Rational(1));
    p.rows.push_back(row);
    p.rhs.push_back(Rational(0));
  }
  return p;
}

/// Minimum-TV program: minimize (1/2) sum_lambda |nu+ - nu-| over all
/// marginal-consistent models. z_lambda >= |delta_lambda| is enforced by
/// the slack pairs z - delta - s1 = 0 and z + delta - s2 = 0.
inline lp::Problem tv_problem(const RationalQuad& quad, const ExactWeights& w) {
  const int width = detail::kMuVars + 4 + 8;  // mu, z, two slacks per lambda
  lp::Problem p;
  p.cost.assign(width, Rational(0));
  for (int lam = 0; lam < 4; ++lam) p.cost[detail::kMuVars + lam] = Rational(1, 2);
  detail::add_marginal_rows(p, quad, width);
  for (int lam = 0; lam < 4; ++lam) {
    std::vector<Rational> lower(width, Rational(0));  // z - delta - s1 = 0
    lower[detail::kMuVars + lam] = 1;
    detail::add_mixture_delta(lower, w, lam, Rational(-1));
    lower[detail::kMuVars + 4 + lam] = -1;
    p.rows.push_back(lower);
    p.rhs.push_back(Rational(0));

    std::vector<Rational> upper(width, Rational(0));  // z + delta - s2 = 0
    upper[detail::kMuVars + lam] = 1;
    detail::add_mixture_delta(upper, w, lam, Rational(1));
    upper[detail::kMuVars + 4 + 4 + lam] = -1;
    p.rows.push_back(upper);
    p.rhs.push_back(Rational(0));
  }
  return p;
}

/// Result of the ontic-model oracle. min_parity_tv and the witness model
/// are present when the corresponding program was solved.
struct LpVerdict {
  bool feasible = false;
  std::optional<Rational> min_parity_tv;
  std::optional<std::array<OnticDistribution, 4>> witness_model;
};

namespace detail {

inline std::array<OnticDistribution, 4> extract_model(const std::vector<Rational>& x) {
  std::array<OnticDistribution, 4> model;
  for (int ij = 0; ij < 4; ++ij)
    for (int lam = 0; lam < 4; ++lam) model[ij].mass[lam] = x[4 * ij + lam];
  return model;
}

inline lp::Solution solve_checked(const lp::Problem& p) {
  lp::Solution s = lp::solve(p);
  if (s.status == lp::Status::unbounded || !lp::verify(p, s))
    fail(ErrorCode::DomainError, "LP certificate failed exact verification");
  return s;
}

inline void check_weights(const PreparationQuad& quad, const EquivalenceWeights& w) {
  PrepVector lhs = w.p * quad.p00 + (1.0 - w.p) * quad.p11;
  PrepVector rhs = w.q * quad.p01 + (1.0 - w.q) * quad.p10;
  if (infinity_norm(lhs - rhs) > kWeightResidualTol)
    fail(ErrorCode::InconsistentWeights,
         "weights do not reproduce the mixture equality on the input quad");
}

}  // namespace detail

inline LpVerdict nc_feasible(const RationalQuad& quad, const ExactWeights& w) {
  lp::Solution s = detail::solve_checked(feasibility_problem(quad, w));
  LpVerdict v;
  v.feasible = s.status == lp::Status::optimal;
  if (v.feasible) v.witness_model = detail::extract_model(s.x);
  return v;
}

inline LpVerdict min_parity_tv(const RationalQuad& quad, const ExactWeights& w) {
  lp::Solution s = detail::solve_checked(tv_problem(quad, w));
  if (s.status != lp::Status::optimal)
    fail(ErrorCode::DomainError, "TV program must be feasible for any disk quad");
  LpVerdict v;
  v.min_parity_tv = s.objective;
  v.feasible = s.objective == 0;  // zero TV and model existence coincide
  v.witness_model = detail::extract_model(s.x);
  return v;
}

/// Double-precision entry points: quantize, re-solve weights exactly, run
/// the programs. The passed weights are validated against the double quad
/// and then replaced by the exact re-solve.
inline LpVerdict nc_feasible(const PreparationQuad& quad, const EquivalenceWeights& w) {
  detail::check_weights(quad, w);
  RationalQuad g = quantize_quad(quad);
  return nc_feasible(g, exact_equivalence(g));
}

inline LpVerdict min_parity_tv(const PreparationQuad& quad, const EquivalenceWeights& w) {
  detail::check_weights(quad, w);
  RationalQuad g = quantize_quad(quad);
  return min_parity_tv(g, exact_equivalence(g));
}

/// min_parity_tv minus the exact distance of the half-half parity
/// mixtures. Strictly positive values certify that the parity mixtures are
/// ontologically more distinct than operationally: a parity-preservation
/// violation.
inline Rational bodp_gap(const PreparationQuad& quad, const EquivalenceWeights& w) {
  detail::check_weights(quad, w);
  RationalQuad g = quantize_quad(quad);
  ExactWeights ew = exact_equivalence(g);
  lp::Solution s = detail::solve_checked(tv_problem(g, ew));
  return s.objective - exact_parity_distance(g);
}

/// Everything the exact oracle can say about one quad, with built-in
/// cross-checks between the independent computation paths.
struct OracleReport {
  RationalQuad quad;
  ExactWeights weights;
  bool feasible = false;
  Rational min_tv;
  Rational parity_distance;
  Rational gap;
  Rational pusey_raw_exact;
  std::array<OnticDistribution, 4> model;                   // TV optimum
  std::optional<std::array<OnticDistribution, 4>> nc_model; // when feasible
};

inline OracleReport lp_verdict(const PreparationQuad& quad, const EquivalenceWeights& w) {
  detail::check_weights(quad, w);
  OracleReport r;
  r.quad = quantize_quad(quad);
  r.weights = exact_equivalence(r.quad);

  LpVerdict feas = nc_feasible(r.quad, r.weights);
  LpVerdict tv = min_parity_tv(r.quad, r.weights);
  r.feasible = feas.feasible;
  r.min_tv = *tv.min_parity_tv;
  r.parity_distance = exact_parity_distance(r.quad);
  r.gap = r.min_tv - r.parity_distance;
  r.pusey_raw_exact = exact_pusey_raw(r.quad, r.weights);
  r.model = *tv.witness_model;
  r.nc_model = feas.witness_model;

  // Independent paths must agree: a model exists iff zero TV is reachable,
  // and a positive witness value excludes a model.
  if (r.feasible != (r.min_tv == 0))
    fail(ErrorCode::DomainError, "oracle cross-check failed: feasibility vs TV");
  if (r.pusey_raw_exact > 0 && r.feasible)
    fail(ErrorCode::DomainError, "oracle cross-check failed: witness vs feasibility");
  return r;
}

/// Audit dumps of both programs in the plain-text tableau format.
inline std::string lp_dump(const PreparationQuad& quad, const EquivalenceWeights& w) {
  detail::check_weights(quad, w);
  RationalQuad g = quantize_quad(quad);
  ExactWeights ew = exact_equivalence(g);
  return "feasibility " + lp::dump(feasibility_problem(g, ew)) +
         "min-parity-tv " + lp::dump(tv_problem(g, ew));
}

}  // namespace simplest
