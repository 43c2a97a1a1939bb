// Copyright 2026 The valgame Authors
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


// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "experiments.hpp"
#include "support/oracles.hpp"
#include "support/random_games.hpp"
#include "valgame/coalition.hpp"
#include "valgame/dataset.hpp"
#include "valgame/diagnostics.hpp"
#include "valgame/games.hpp"
#include "valgame/learners.hpp"
#include "valgame/lp.hpp"
#include "valgame/min_norm.hpp"
#include "valgame/oracle.hpp"
#include "valgame/rng.hpp"
#include "valgame/valuation.hpp"

namespace vg = valgame;
namespace vt = valgame::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// ---- 1 ----------------------------------------------------------------------

Outcome AxiomSuite() {
  vg::SeededRng rng(101);
  int games = 0;
  double worst_axiom = 0.0;
  double worst_core = 0.0;
  double worst_sum = 0.0;
  for (int g = 0; g < 100; ++g) {
    const int n = 2 + static_cast<int>(rng.UniformInt(11));
    const vt::NamedGame game = vt::RandomAnalyticGame(g, n, rng);
    const std::vector<double> table = vg::FullTable(*game.oracle);
    const std::vector<double> phi = vg::ExactShapley(*game.oracle).values;
    const std::uint64_t full = table.size() - 1;

    const double total = std::accumulate(phi.begin(), phi.end(), 0.0);
    worst_axiom = std::max(worst_axiom, std::abs(total - (table[full] - table[0])));
    for (int i = 0; i < n; ++i) {
      const std::uint64_t bi = std::uint64_t{1} << i;
      // Dummy: a constant marginal c forces phi_i = c.
      const double c = table[bi] - table[0];
      bool dummy = true;
      for (std::uint64_t s = 0; s <= full && dummy; ++s) {
        if (!(s & bi)) dummy = std::abs(table[s | bi] - table[s] - c) < 1e-12;
      }
      if (dummy) worst_axiom = std::max(worst_axiom, std::abs(phi[i] - c));
      for (int j = i + 1; j < n; ++j) {
        const std::uint64_t bj = std::uint64_t{1} << j;
        bool symmetric = true;
        for (std::uint64_t s = 0; s <= full && symmetric; ++s) {
          if (!(s & (bi | bj))) symmetric = std::abs(table[s | bi] - table[s | bj]) < 1e-12;
        }
        if (symmetric) worst_axiom = std::max(worst_axiom, std::abs(phi[i] - phi[j]));
      }
    }

    const vg::ValueVector lc = vg::ExactLeastCore(*game.oracle);
    const double e = lc.excess.value();
    for (std::uint64_t s = 0; s <= full; ++s) {
      double xs = 0.0;
      for (int i = 0; i < n; ++i) {
        if (s >> i & 1) xs += lc.values[i];
      }
      worst_core = std::max(worst_core, table[s] - e - xs);
    }
    const double sum = std::accumulate(lc.values.begin(), lc.values.end(), 0.0);
    worst_sum = std::max(worst_sum, std::abs(sum - table[full]));
    ++games;
  }
  const bool pass = worst_axiom <= 1e-9 && worst_core <= 1e-7 && worst_sum <= 1e-7;
  return {pass, Fmt("%d games; max axiom gap %.2e, max core violation %.2e, max |sum x - U(D)| %.2e",
                    games, worst_axiom, worst_core, worst_sum)};
}

// ---- 2 ----------------------------------------------------------------------

Outcome OracleEquivalence() {
  vg::SeededRng rng(202);
  double worst = 0.0;
  int games = 0;
  for (int n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<double> table(std::size_t{1} << n);
      for (double& v : table) v = rng.Uniform(-1.0, 1.0);
      const auto oracle = std::make_shared<vg::TableOracle>(n, table, vg::Bounds{-1.0, 1.0});
      const std::vector<double> fast = vg::ExactShapley(*oracle).values;
      const std::vector<double> slow = vt::PermutationShapley(table, n);
      for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(fast[i] - slow[i]));
      ++games;
    }
  }
  return {worst <= 1e-9, Fmt("%d random tables, n = 1..8; max coordinate gap %.2e", games, worst)};
}

// ---- 3 and 4 ------------------------------------------------------------------

struct TheoremSuite {
  int functions = 0;
  int drawn = 0;
  int counterexamples = 0;
  int oracle_mismatches = 0;
  int influence_failures = 0;
  double max_influence_slack = -1e300;  // max of Inf - (a + b)
};

// Random [0,1] tables: low-amplitude noise, noisy coverage and full-range noise
// (the last rarely has a finite beta*).
std::vector<double> RandomUnitFunction(int n, int kind, vg::SeededRng& rng) {
  std::vector<double> f(std::size_t{1} << n);
  if (kind == 0) {
    const double width = rng.Uniform(0.05, 0.45);
    const double centre = rng.Uniform(width, 1.0 - width);
    for (double& v : f) v = centre + rng.Uniform(-width, width);
  } else if (kind == 1) {
    const int universe = 12;
    std::vector<std::uint32_t> cover(n);
    for (auto& c : cover) c = static_cast<std::uint32_t>(rng.UniformInt(1u << universe));
    const double noise = rng.Uniform(0.0, 0.1);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      std::uint32_t u = 0;
      for (int i = 0; i < n; ++i) {
        if (x >> i & 1) u |= cover[i];
      }
      const double base = std::popcount(u) / static_cast<double>(universe);
      f[x] = std::clamp(base * (1.0 - noise) + noise * rng.Uniform(), 0.0, 1.0);
    }
  } else {
    for (double& v : f) v = rng.Uniform();
  }
  return f;
}

const TheoremSuite& RunTheoremSuite() {
  static const TheoremSuite suite = [] {
    TheoremSuite s;
    vg::SeededRng rng(303);
    while (s.functions < 1000) {
      const int n = 2 + static_cast<int>(rng.UniformInt(7));
      const std::vector<double> f = RandomUnitFunction(n, s.drawn % 3, rng);
      ++s.drawn;
      const std::optional<double> beta = vg::MinBetaExact(f, n);
      const std::optional<double> beta_ref = vt::DefinitionMinBeta(f, n);
      if (beta.has_value() != beta_ref.has_value() ||
          (beta && std::abs(*beta - *beta_ref) > 1e-9)) {
        ++s.oracle_mismatches;
      }
      if (!beta) continue;
      ++s.functions;
      const double a = 2.0;
      const double b = 2.0 * *beta / (1.0 - *beta);
      const vg::SelfBoundingParams sb = vg::CheckSelfBounding(f, n, a, b);
      const vt::SelfBoundingCheck ref = vt::DefinitionSelfBounding(f, n, a, b);
      if ((sb.Certified()) != (ref.unit <= 1e-9 && ref.sum <= 1e-9)) ++s.oracle_mismatches;
      if (!sb.Certified()) {
        ++s.counterexamples;
        continue;
      }
      const double inf = vg::TotalInfluence(f, n).total;
      if (std::abs(inf - vt::DefinitionInfluence(f, n)) > 1e-9) ++s.oracle_mismatches;
      s.max_influence_slack = std::max(s.max_influence_slack, inf - (a + b));
      if (inf > a + b + 1e-9) ++s.influence_failures;
    }
    return s;
  }();
  return suite;
}

Outcome TheoremOne() {
  const TheoremSuite& s = RunTheoremSuite();
  return {s.counterexamples == 0 && s.oracle_mismatches == 0,
          Fmt("%d functions with finite beta* (of %d drawn); %d counterexamples, %d oracle "
              "mismatches",
              s.functions, s.drawn, s.counterexamples, s.oracle_mismatches)};
}

Outcome InfluenceLemma() {
  const TheoremSuite& s = RunTheoremSuite();
  const int certified = s.functions - s.counterexamples;
  return {certified > 0 && s.influence_failures == 0,
          Fmt("%d certified functions; %d with Inf > a + b; max Inf - (a + b) = %.3f", certified,
              s.influence_failures, s.max_influence_slack)};
}

// ---- 5 ------------------------------------------------------------------------

Outcome TableOne() {
  const auto data = std::make_shared<const vg::Dataset>(vg::MakeSyntheticSmall(0));
  const auto game = vg::Memoize(std::make_shared<vg::LogisticGame>(data, vg::LogisticHyperparams{},
                                                                   vg::Metric::kAccuracy));
  vg::SeededRng rng(0);
  const std::vector<double> betas{0.0, 0.99};
  const auto reports = vg::CheckRelaxedSubmodularity(*game, betas, 2000, rng);
  const double r0 = reports[0].rate;
  const double r99 = reports[1].rate;
  return {std::abs(r0 - 0.68) <= 0.10 && r99 >= 0.99,
          Fmt("rate(beta=0) = %.4f, rate(beta=0.99) = %.4f, %llu trainings", r0, r99,
              static_cast<unsigned long long>(game->eval_count()))};
}

// ---- 6 and 7 ------------------------------------------------------------------

using Errors = std::map<std::pair<std::string, std::uint64_t>, std::vector<double>>;

const Errors& ErrorSimulation() {
  static const Errors errors = [] {
    vg::cli::ExperimentConfig cfg = vg::cli::DefaultConfig(vg::cli::Command::kSimulateError);
    cfg.methods = {"permutation", "dul_permutation", "mc_least_core", "dul_mc_least_core", "cga"};
    cfg.m_train = {100, 200, 300};
    cfg.repetitions = 10;
    Errors out;
    for (const vg::cli::ErrorRow& row : vg::cli::RunErrorSimulation(cfg)) {
      if (row.method == "exact") continue;
      auto& v = out[{row.method, row.m_train}];
      v.resize(std::max<std::size_t>(v.size(), row.rep + 1));
      v[row.rep] = row.errors.linf;
    }
    return out;
  }();
  return errors;
}

Outcome FigureFour() {
  const Errors& e = ErrorSimulation();
  std::string detail;
  int perm_wins = 0;
  int lc_wins = 0;
  for (std::uint64_t b : {100, 200, 300}) {
    const double p = Median(e.at({"permutation", b}));
    const double dp = Median(e.at({"dul_permutation", b}));
    const double l = Median(e.at({"mc_least_core", b}));
    const double dl = Median(e.at({"dul_mc_least_core", b}));
    perm_wins += dp < p;
    lc_wins += dl < l;
    detail += Fmt("m=%llu perm %.4f/dul %.4f, lc %.4f/dul %.4f; ", static_cast<unsigned long long>(b),
                  p, dp, l, dl);
  }
  detail += Fmt("DUL wins %d/3 (Shapley), %d/3 (least core)", perm_wins, lc_wins);
  return {perm_wins >= 2 && lc_wins >= 2, detail};
}

Outcome CgaInferiority() {
  const Errors& e = ErrorSimulation();
  const std::vector<double>& cga = e.at({"cga", 300});
  const std::vector<double>& dul = e.at({"dul_permutation", 300});
  int worse = 0;
  for (std::size_t r = 0; r < cga.size(); ++r) worse += cga[r] > dul[r];
  return {worse >= 7, Fmt("CGA l_inf above DUL permutation in %d/10 seeds (medians %.4f vs %.4f)",
                          worse, Median(cga), Median(dul))};
}

// ---- 8 ------------------------------------------------------------------------

// Each player covers one element, so removing a player loses at most one
// element and the number of lost elements is at most the coverage count:
// (1, 0)-self-bounding. Rescaled affinely into [L, U] with slope <= 1.
struct SingletonCoverage {
  std::vector<int> element;
  int universe = 0;
  double lower = 1.0;
  double upper = 0.0;

  double operator()(const vg::Coalition& s) const {
    std::vector<char> hit(universe, 0);
    int count = 0;
    for (int p : s.members()) {
      if (!hit[element[p]]) {
        hit[element[p]] = 1;
        ++count;
      }
    }
    return lower + (upper - lower) * count / universe;
  }
};

SingletonCoverage MakeSingletonCoverage(int n, int universe, std::uint64_t seed) {
  vg::SeededRng rng(seed);
  SingletonCoverage g;
  g.universe = universe;
  g.upper = universe;
  for (int i = 0; i < n; ++i) g.element.push_back(static_cast<int>(rng.UniformInt(universe)));
  return g;
}

struct PmacRun {
  int good_trials = 0;
  bool case_one = false;
  double worst_fraction = 1.0;
};

PmacRun RunPmac(const SingletonCoverage& game, int n, const vg::PmacConfig& cfg) {
  const std::int64_t m = vg::PmacSampleSize(cfg);
  const double alpha = cfg.SandwichFactor();
  PmacRun run;
  for (int t = 0; t < 100; ++t) {
    vg::SeededRng rng(8000 + t);
    std::vector<vg::UtilitySample> samples;
    for (std::int64_t k = 0; k < m; ++k) {
      const vg::Coalition s = vg::SampleUniformCoalition(rng, n);
      samples.push_back({s, game(s)});
    }
    const double h = vg::PmacLearn(samples, cfg).as<vg::ConstantModel>().value;
    run.case_one = h != cfg.lower;
    int inside = 0;
    const int draws = 2000;
    for (int k = 0; k < draws; ++k) {
      const double f = game(vg::SampleUniformCoalition(rng, n));
      inside += h <= f && f <= alpha * h;
    }
    const double fraction = inside / static_cast<double>(draws);
    run.worst_fraction = std::min(run.worst_fraction, fraction);
    run.good_trials += fraction >= 1.0 - cfg.epsilon;
  }
  return run;
}

Outcome PmacGuarantee() {
  // Certify the construction exhaustively at n = 14 with the definition oracle.
  {
    const SingletonCoverage g = MakeSingletonCoverage(14, 9, 81);
    std::vector<double> table(std::size_t{1} << 14);
    for (std::uint64_t x = 0; x < table.size(); ++x) table[x] = g(vg::Coalition::FromMask(14, x));
    const vt::SelfBoundingCheck c = vt::DefinitionSelfBounding(table, 14, 1.0, 0.0);
    if (c.unit > 1e-9 || c.sum > 1e-9) return {false, "construction not (1,0)-self-bounding"};
  }
  std::string detail;
  bool pass = true;
  struct Instance {
    int n;
    int universe;
  };
  for (const Instance inst : {Instance{400, 300}, Instance{12, 10}}) {
    const SingletonCoverage g = MakeSingletonCoverage(inst.n, inst.universe, 82);
    vg::PmacConfig cfg;
    cfg.a = 1.0;
    cfg.b = 0.0;
    cfg.lower = g.lower;
    cfg.upper = g.upper;
    cfg.epsilon = 0.1;
    cfg.delta = 0.1;
    const PmacRun run = RunPmac(g, inst.n, cfg);
    pass = pass && run.good_trials >= 90;
    detail += Fmt("n=%d (%s, m=%lld): %d/100 trials sandwich >= 0.9 of draws, worst %.3f; ",
                  inst.n, run.case_one ? "mu/3 branch" : "L branch",
                  static_cast<long long>(vg::PmacSampleSize(cfg)), run.good_trials,
                  run.worst_fraction);
  }
  return {pass, detail};
}

// ---- 9 ------------------------------------------------------------------------

Outcome PacRecovery() {
  vg::SeededRng rng(909);
  double worst = 0.0;
  int targets = 0;
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> vars(n);
    std::iota(vars.begin(), vars.end(), 0);
    for (int rep = 0; rep < 4; ++rep) {
      const int degree = 1 + rep % 2;
      const auto monomials = vg::EnumerateMonomials(vars, degree);
      std::vector<double> coeff(monomials.size());
      for (double& c : coeff) c = rng.Uniform(-1.0, 1.0);
      std::vector<vg::UtilitySample> samples;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        double v = 0.0;
        for (std::size_t k = 0; k < monomials.size(); ++k) {
          bool on = true;
          for (int i : monomials[k]) on = on && (x >> i & 1);
          if (on) v += coeff[k];
        }
        samples.push_back({vg::Coalition::FromMask(n, x), v});
      }
      const vg::PolyFit fit = vg::PacPolyLearn(samples, 2, vars);
      double gap = fit.l1_residual;
      for (const auto& s : samples) gap = std::max(gap, std::abs(fit.model.Predict(s.coalition) - s.value));
      worst = std::max(worst, gap);
      ++targets;
    }
  }

  // Parity x0 ^ x1 ^ x2 against the best degree-2 fit.
  std::vector<vg::UtilitySample> parity;
  std::vector<std::vector<double>> design;
  std::vector<double> y;
  for (std::uint64_t x = 0; x < 8; ++x) {
    const double v = std::popcount(x) % 2;
    parity.push_back({vg::Coalition::FromMask(3, x), v});
    const double a = x & 1, b = x >> 1 & 1, c = x >> 2 & 1;
    design.push_back({1.0, a, b, c, a * b, a * c, b * c});
    y.push_back(v);
  }
  const std::vector<int> vars{0, 1, 2};
  const double residual = vg::PacPolyLearn(parity, 2, vars).l1_residual;
  const double optimum = vt::BruteForceL1Optimum(design, y);
  const bool pass = worst <= 1e-6 && residual > 1e-6 && std::abs(residual - optimum) <= 1e-6;
  return {pass, Fmt("%d realizable targets, max residual %.2e; parity residual %.9f, brute-force "
                    "optimum %.9f",
                    targets, worst, residual, optimum)};
}

// ---- 10 -----------------------------------------------------------------------

// Hit-and-run inside {A x <= b, sum x = s (optional)} from a strictly feasible x0.
std::vector<std::vector<double>> HitAndRun(const std::vector<std::vector<double>>& a,
                                           const std::vector<double>& b, bool equality,
                                           std::vector<double> x, int count, vg::SeededRng& rng) {
  const int k = static_cast<int>(x.size());
  std::vector<std::vector<double>> points;
  while (static_cast<int>(points.size()) < count) {
    std::vector<double> d(k);
    for (double& v : d) v = rng.Normal();
    if (equality) {
      const double mean = std::accumulate(d.begin(), d.end(), 0.0) / k;
      for (double& v : d) v -= mean;
    }
    double lo = -1e300, hi = 1e300;
    for (std::size_t r = 0; r < a.size(); ++r) {
      double ad = 0.0, ax = 0.0;
      for (int j = 0; j < k; ++j) {
        ad += a[r][j] * d[j];
        ax += a[r][j] * x[j];
      }
      const double room = b[r] - ax;
      if (ad > 1e-14) hi = std::min(hi, room / ad);
      if (ad < -1e-14) lo = std::max(lo, room / ad);
    }
    const double t = lo + (hi - lo) * rng.Uniform();
    for (int j = 0; j < k; ++j) x[j] += t * d[j];
    points.push_back(x);
  }
  return points;
}

Outcome SolverSuite() {
  vg::SeededRng rng(1010);
  int lp_mismatch = 0, infeasible = 0;
  double lp_gap = 0.0;
  for (int t = 0; t < 500; ++t) {
    const int k = 2 + static_cast<int>(rng.UniformInt(4));
    const int m = k + static_cast<int>(rng.UniformInt(9 - k));
    vt::VertexLp ref;
    vg::LinearProgram lp(k);
    for (int j = 0; j < k; ++j) ref.c.push_back(lp.objective[j] = rng.Uniform(-1.0, 1.0));
    for (int r = 0; r < m; ++r) {
      std::vector<double> row(k);
      for (double& v : row) v = rng.Uniform(-1.0, 1.0);
      const double rhs = rng.Uniform(-0.3, 1.0);
      ref.a.push_back(row);
      ref.b.push_back(rhs);
      lp.AddInequality(row, rhs);
    }
    for (int j = 0; j < k; ++j) {
      std::vector<double> row(k, 0.0);
      row[j] = 1.0;
      ref.a.push_back(row);
      ref.b.push_back(5.0);
      lp.AddInequality(row, 5.0);
    }
    const std::optional<double> want = vt::VertexEnumerationOptimum(ref);
    const vg::LpSolution got = vg::SolveLp(lp);
    if (!want) {
      ++infeasible;
      lp_mismatch += got.status != vg::LpStatus::kInfeasible;
      continue;
    }
    if (got.status != vg::LpStatus::kOptimal) {
      ++lp_mismatch;
      continue;
    }
    const double gap = std::abs(got.objective_value - *want);
    lp_gap = std::max(lp_gap, gap);
    lp_mismatch += gap > 1e-7;
  }

  int norm_failures = 0, instances = 0;
  double worst_violation = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int k = 2 + static_cast<int>(rng.UniformInt(4));
    const int m = 2 + static_cast<int>(rng.UniformInt(6));
    const bool equality = t % 2 == 0;
    std::vector<double> x0(k);
    for (double& v : x0) v = rng.Uniform(-2.0, 2.0);
    vg::LinearProgram poly(k);
    for (int j = 0; j < k; ++j) poly.SetFree(j);
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    const auto add = [&](const std::vector<double>& row, double rhs) {
      a.push_back(row);
      b.push_back(rhs);
      poly.AddInequality(row, rhs);
    };
    for (int r = 0; r < m; ++r) {
      std::vector<double> row(k);
      double ax = 0.0;
      for (int j = 0; j < k; ++j) ax += (row[j] = rng.Uniform(-1.0, 1.0)) * x0[j];
      add(row, ax + rng.Uniform(0.05, 0.5));
    }
    for (int j = 0; j < k; ++j) {
      std::vector<double> up(k, 0.0), down(k, 0.0);
      up[j] = 1.0;
      down[j] = -1.0;
      add(up, 3.0);
      add(down, 3.0);
    }
    if (equality) {
      poly.AddEquality(std::vector<double>(k, 1.0), std::accumulate(x0.begin(), x0.end(), 0.0));
    }
    const vg::MinNormResult res = vg::MinL2OnPolytope(poly);
    const double norm = std::sqrt(std::inner_product(res.x.begin(), res.x.end(), res.x.begin(), 0.0));
    double violation = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r) {
      violation = std::max(violation, std::inner_product(a[r].begin(), a[r].end(), res.x.begin(), 0.0) - b[r]);
    }
    if (equality) {
      violation = std::max(violation, std::abs(std::accumulate(res.x.begin(), res.x.end(), 0.0) -
                                               std::accumulate(x0.begin(), x0.end(), 0.0)));
    }
    worst_violation = std::max(worst_violation, violation);
    bool beaten = violation > 1e-7;
    for (const auto& p : HitAndRun(a, b, equality, x0, 10000, rng)) {
      if (std::sqrt(std::inner_product(p.begin(), p.end(), p.begin(), 0.0)) < norm - 1e-9) beaten = true;
    }
    norm_failures += beaten;
    ++instances;
  }
  return {lp_mismatch == 0 && norm_failures == 0,
          Fmt("LP: 500 instances (%d infeasible), %d mismatches, max gap %.2e; min-norm: %d instances, "
              "%d beaten by a sampled point, max violation %.2e",
              infeasible, lp_mismatch, lp_gap, instances, norm_failures, worst_violation)};
}

// ---- 11 -----------------------------------------------------------------------

Outcome Unbiasedness() {
  std::string detail;
  bool pass = true;
  const auto data = std::make_shared<const vg::Dataset>(vg::MakeSyntheticSmall(0));
  const auto logistic = std::make_shared<vg::LogisticGame>(data, vg::LogisticHyperparams{},
                                                           vg::Metric::kAccuracy);
  struct Case {
    std::string name;
    std::shared_ptr<const vg::UtilityOracle> oracle;
  };
  for (const Case& c : {Case{"majority n=5 q=3", vg::MajorityOracle(5, 3)},
                        Case{"synthetic n=10", vg::Memoize(logistic)}}) {
    const int n = c.oracle->n();
    const std::vector<double> table = vg::FullTable(*c.oracle);
    const std::vector<double> exact = vt::PermutationShapley(table, n);
    const vg::TableOracle oracle(n, table, c.oracle->bounds());
    std::vector<double> sum(n, 0.0), sq(n, 0.0);
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) {
      const vg::ValueVector v = vg::PermutationSampling(oracle, 10 * (n + 1), vg::SeededRng(s));
      for (int i = 0; i < n; ++i) {
        sum[i] += v.values[i];
        sq[i] += v.values[i] * v.values[i];
      }
    }
    double worst_z = 0.0;
    for (int i = 0; i < n; ++i) {
      const double mean = sum[i] / seeds;
      const double var = (sq[i] - seeds * mean * mean) / (seeds - 1);
      const double se = std::sqrt(std::max(var, 0.0) / seeds);
      const double gap = std::abs(mean - exact[i]);
      const double z = se > 0.0 ? gap / se : (gap <= 1e-12 ? 0.0 : 1e300);
      worst_z = std::max(worst_z, z);
    }
    pass = pass && worst_z <= 3.0;
    detail += Fmt("%s: max |mean - exact| / SE = %.2f; ", c.name.c_str(), worst_z);
  }
  return {pass, detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "axiom-suite", AxiomSuite},
      {2, "shapley-oracle-equivalence", OracleEquivalence},
      {3, "relaxed-submodularity-implies-self-bounding", TheoremOne},
      {4, "influence-bound", InfluenceLemma},
      {5, "submodularity-rates-synthetic", TableOne},
      {6, "dul-error-reduction", FigureFour},
      {7, "cga-inferiority", CgaInferiority},
      {8, "pmac-sandwich", PmacGuarantee},
      {9, "pac-polynomial-recovery", PacRecovery},
      {10, "solver-suite", SolverSuite},
      {11, "permutation-unbiasedness", Unbiasedness},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s %2d %-46s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
