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

#include "valgame/min_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "valgame/error.hpp"

namespace valgame {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Constraints are stored as unit normals: nrm . x + off >= 0 (or = 0).
struct Constraints {
  int n = 0;
  std::vector<double> eq_normals, eq_offsets;
  std::vector<double> in_normals, in_offsets;

  int eq_count() const { return static_cast<int>(eq_offsets.size()); }
  int in_count() const { return static_cast<int>(in_offsets.size()); }
  const double* eq(int i) const { return eq_normals.data() + static_cast<std::size_t>(i) * n; }
  const double* in(int i) const { return in_normals.data() + static_cast<std::size_t>(i) * n; }

  // Returns false for a zero row that can never be satisfied.
  bool Add(std::vector<double> row, double offset, bool equality, double tol) {
    double norm = 0.0;
    for (double v : row) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) return equality ? std::abs(offset) <= tol : offset >= -tol;
    for (double& v : row) v /= norm;
    offset /= norm;
    auto& normals = equality ? eq_normals : in_normals;
    normals.insert(normals.end(), row.begin(), row.end());
    (equality ? eq_offsets : in_offsets).push_back(offset);
    return true;
  }
};

double Dot(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Dual active-set state for min 1/2 |x|^2 (G = I, so J starts as I).
class ActiveSetQp {
 public:
  explicit ActiveSetQp(int n)
      : n_(n), j_(static_cast<std::size_t>(n) * n, 0.0), r_(static_cast<std::size_t>(n) * n, 0.0),
        x_(n, 0.0), d_(n), z_(n), rv_(n + 1), u_(n + 1, 0.0), active_(n + 1, 0) {
    for (int i = 0; i < n; ++i) J(i, i) = 1.0;
  }

  std::vector<double>& x() { return x_; }
  int iq() const { return iq_; }
  double u(int k) const { return u_[k]; }
  int active(int k) const { return active_[k]; }

  // d = J' np, z = J2 d2, r = R^-1 d1.
  void Direction(const double* np) {
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      for (int k = 0; k < n_; ++k) s += J(k, i) * np[k];
      d_[i] = s;
    }
    for (int i = 0; i < n_; ++i) {
      double s = 0.0;
      for (int k = iq_; k < n_; ++k) s += J(i, k) * d_[k];
      z_[i] = s;
    }
    for (int i = iq_ - 1; i >= 0; --i) {
      double s = 0.0;
      for (int k = i + 1; k < iq_; ++k) s += R(i, k) * rv_[k];
      rv_[i] = (d_[i] - s) / R(i, i);
    }
  }

  const std::vector<double>& z() const { return z_; }
  const std::vector<double>& r() const { return rv_; }

  void Step(double t, bool primal) {
    if (primal) {
      for (int k = 0; k < n_; ++k) x_[k] += t * z_[k];
    }
    for (int k = 0; k < iq_; ++k) u_[k] -= t * rv_[k];
    u_[iq_] += t;
  }

  void SetPending(int id) {
    u_[iq_] = 0.0;
    active_[iq_] = id;
  }

  // Appends the pending constraint (d from the last Direction call). Returns
  // false when it is linearly dependent on the active set.
  bool AddConstraint() {
    for (int j = n_ - 1; j >= iq_ + 1; --j) {
      double cc = d_[j - 1];
      double ss = d_[j];
      const double h = std::hypot(cc, ss);
      if (std::abs(h) < kEps) continue;
      d_[j] = 0.0;
      ss /= h;
      cc /= h;
      if (cc < 0.0) {
        cc = -cc;
        ss = -ss;
        d_[j - 1] = -h;
      } else {
        d_[j - 1] = h;
      }
      const double xny = ss / (1.0 + cc);
      for (int k = 0; k < n_; ++k) {
        const double t1 = J(k, j - 1);
        const double t2 = J(k, j);
        J(k, j - 1) = t1 * cc + t2 * ss;
        J(k, j) = xny * (t1 + J(k, j - 1)) - t2;
      }
    }
    ++iq_;
    for (int i = 0; i < iq_; ++i) R(i, iq_ - 1) = d_[i];
    if (std::abs(d_[iq_ - 1]) <= kEps * r_norm_) {
      // Undo: the rotations above only mixed columns >= iq, so J stays valid.
      for (int i = 0; i < iq_; ++i) R(i, iq_ - 1) = 0.0;
      --iq_;
      return false;
    }
    r_norm_ = std::max(r_norm_, std::abs(d_[iq_ - 1]));
    return true;
  }

  void DeleteConstraint(int id, int first_inequality) {
    int qq = -1;
    for (int i = first_inequality; i < iq_; ++i) {
      if (active_[i] == id) {
        qq = i;
        break;
      }
    }
    if (qq < 0) return;
    for (int i = qq; i < iq_ - 1; ++i) {
      active_[i] = active_[i + 1];
      u_[i] = u_[i + 1];
      for (int k = 0; k < n_; ++k) R(k, i) = R(k, i + 1);
    }
    active_[iq_ - 1] = active_[iq_];
    u_[iq_ - 1] = u_[iq_];
    active_[iq_] = 0;
    u_[iq_] = 0.0;
    for (int k = 0; k < iq_; ++k) R(k, iq_ - 1) = 0.0;
    --iq_;
    if (iq_ == 0) return;
    for (int j = qq; j < iq_; ++j) {
      double cc = R(j, j);
      double ss = R(j + 1, j);
      const double h = std::hypot(cc, ss);
      if (std::abs(h) < kEps) continue;
      cc /= h;
      ss /= h;
      R(j + 1, j) = 0.0;
      if (cc < 0.0) {
        R(j, j) = -h;
        cc = -cc;
        ss = -ss;
      } else {
        R(j, j) = h;
      }
      const double xny = ss / (1.0 + cc);
      for (int k = j + 1; k < iq_; ++k) {
        const double t1 = R(j, k);
        const double t2 = R(j + 1, k);
        R(j, k) = t1 * cc + t2 * ss;
        R(j + 1, k) = xny * (t1 + R(j, k)) - t2;
      }
      for (int k = 0; k < n_; ++k) {
        const double t1 = J(k, j);
        const double t2 = J(k, j + 1);
        J(k, j) = t1 * cc + t2 * ss;
        J(k, j + 1) = xny * (J(k, j) + t1) - t2;
      }
    }
  }


 private:
  double& J(int r, int c) { return j_[static_cast<std::size_t>(r) * n_ + c]; }
  double& R(int r, int c) { return r_[static_cast<std::size_t>(r) * n_ + c]; }

  int n_;
  std::vector<double> j_, r_;
  std::vector<double> x_, d_, z_, rv_, u_;
  std::vector<int> active_;
  int iq_ = 0;
  double r_norm_ = 1.0;
};

}  // namespace

MinNormResult MinL2OnPolytope(const LinearProgram& polytope, int max_iter, double tol) {
  polytope.Validate();
  Require(max_iter >= 1 && tol > 0.0, ErrorCode::kInvalidArgument,
          "min-norm needs max_iter >= 1 and tol > 0");
  const int n = polytope.num_vars();

  Constraints cons;
  cons.n = n;
  bool consistent = true;
  for (int r = 0; r < polytope.a_eq.rows(); ++r) {
    const auto row = polytope.a_eq.row(r);
    consistent &= cons.Add({row.begin(), row.end()}, -polytope.b_eq[r], true, tol);
  }
  for (int r = 0; r < polytope.a_ineq.rows(); ++r) {
    std::vector<double> row(polytope.a_ineq.row(r).begin(), polytope.a_ineq.row(r).end());
    for (double& v : row) v = -v;
    consistent &= cons.Add(std::move(row), polytope.b_ineq[r], false, tol);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    if (std::isfinite(polytope.lower[j])) {
      e[j] = 1.0;
      cons.Add(e, -polytope.lower[j], false, tol);
    }
    if (std::isfinite(polytope.upper[j])) {
      e[j] = -1.0;
      cons.Add(e, polytope.upper[j], false, tol);
    }
  }
  Require(consistent, ErrorCode::kInfeasible, "polytope has an unsatisfiable zero row");

  const int meq = cons.eq_count();
  const int m = cons.in_count();
  double scale = 1.0;
  for (double v : cons.in_offsets) scale = std::max(scale, std::abs(v));
  for (double v : cons.eq_offsets) scale = std::max(scale, std::abs(v));
  const double select_tol = 1e-13 * scale;

  ActiveSetQp qp(n);
  std::vector<double>& x = qp.x();
  int first_inequality = 0;
  for (int i = 0; i < meq; ++i) {
    const double* np = cons.eq(i);
    qp.Direction(np);
    const double zz = Dot(qp.z().data(), qp.z().data(), n);
    const double t2 =
        zz > kEps ? (-Dot(np, x.data(), n) - cons.eq_offsets[i]) / Dot(qp.z().data(), np, n) : 0.0;
    qp.SetPending(-i - 1);
    qp.Step(t2, true);
    if (!qp.AddConstraint()) {
      Require(std::abs(Dot(np, x.data(), n) + cons.eq_offsets[i]) <= tol, ErrorCode::kInvalidArgument,
              "equality constraints are inconsistent");
    }
  }
  first_inequality = qp.iq();

  // iai[i] >= 0 marks inequality i as inactive.
  std::vector<int> inactive(m);
  for (int i = 0; i < m; ++i) inactive[i] = i;
  std::vector<char> allowed(m, 1);
  std::vector<double> s(m, 0.0);

  MinNormResult out;
  bool done = false;
  while (!done) {
    if (out.iterations >= max_iter) break;
    ++out.iterations;
    for (int i = first_inequality; i < qp.iq(); ++i) inactive[qp.active(i)] = -1;
    std::fill(allowed.begin(), allowed.end(), 1);
    for (int i = 0; i < m; ++i) s[i] = Dot(cons.in(i), x.data(), n) + cons.in_offsets[i];
    const ActiveSetQp saved = qp;

    bool restart = true;
    while (restart) {
      restart = false;
      int ip = -1;
      double worst = -select_tol;
      for (int i = 0; i < m; ++i) {
        if (inactive[i] >= 0 && allowed[i] && s[i] < worst) {
          worst = s[i];
          ip = i;
        }
      }
      if (ip < 0) {
        done = true;
        break;
      }
      const double* np = cons.in(ip);
      qp.SetPending(ip);
      while (true) {
        qp.Direction(np);
        int drop = -1;
        double t1 = kInf;
        for (int k = first_inequality; k < qp.iq(); ++k) {
          if (qp.r()[k] > 0.0 && qp.u(k) / qp.r()[k] < t1) {
            t1 = qp.u(k) / qp.r()[k];
            drop = qp.active(k);
          }
        }
        double t2 = kInf;
        if (Dot(qp.z().data(), qp.z().data(), n) > kEps) {
          t2 = -s[ip] / Dot(qp.z().data(), np, n);
          if (t2 < 0.0) t2 = kInf;
        }
        const double t = std::min(t1, t2);
        Require(t < kInf, ErrorCode::kInfeasible, "polytope is empty");
        if (t2 >= kInf) {
          qp.Step(t, false);
          inactive[drop] = drop;
          qp.DeleteConstraint(drop, first_inequality);
          continue;
        }
        qp.Step(t, true);
        if (std::abs(t - t2) < kEps) {
          if (!qp.AddConstraint()) {
            // Degenerate: restore the state from the start of this pass and
            // exclude the constraint until the next pass.
            qp = saved;
            allowed[ip] = 0;
            for (int i = 0; i < m; ++i) inactive[i] = i;
            for (int i = first_inequality; i < qp.iq(); ++i) inactive[qp.active(i)] = -1;
            for (int i = 0; i < m; ++i) s[i] = Dot(cons.in(i), x.data(), n) + cons.in_offsets[i];
            restart = true;
          } else {
            inactive[ip] = -1;
          }
          break;
        }
        inactive[drop] = drop;
        qp.DeleteConstraint(drop, first_inequality);
        s[ip] = Dot(np, x.data(), n) + cons.in_offsets[ip];
      }
    }
  }

  out.x = x;
  out.active_constraints = qp.iq();
  // Stationarity of 1/2|x|^2 - sum u_k (n_k x + c_k): x = sum u_k n_k.
  std::vector<double> grad = x;
  double dual_infeas = 0.0;
  for (int k = 0; k < qp.iq(); ++k) {
    const int id = qp.active(k);
    const double* nk = id < 0 ? cons.eq(-id - 1) : cons.in(id);
    for (int i = 0; i < n; ++i) grad[i] -= qp.u(k) * nk[i];
    if (id >= 0) dual_infeas = std::max(dual_infeas, -qp.u(k));
  }
  double stationarity = 0.0;
  for (double g : grad) stationarity = std::max(stationarity, std::abs(g));
  double violation = 0.0;
  for (int i = 0; i < meq; ++i) {
    violation = std::max(violation, std::abs(Dot(cons.eq(i), x.data(), n) + cons.eq_offsets[i]));
  }
  for (int i = 0; i < m; ++i) {
    violation = std::max(violation, -(Dot(cons.in(i), x.data(), n) + cons.in_offsets[i]));
  }
  out.max_violation = violation;
  out.kkt_residual = std::max({stationarity, violation, dual_infeas});
  out.converged = done && out.kkt_residual <= tol;
  return out;
}

}  // namespace valgame
