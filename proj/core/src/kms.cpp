#include "kgk/kms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>

namespace kgk {

const char* to_string(StateKind kind) {
  switch (kind) {
    case StateKind::ToeplitzKMS: return "ToeplitzKMS";
    case StateKind::CuntzKriegerKMS: return "CuntzKriegerKMS";
    case StateKind::Ground: return "Ground";
    case StateKind::KMSInfinity: return "KMSInfinity";
  }
  return "?";
}

const char* to_string(IndependenceStatus status) {
  switch (status) {
    case IndependenceStatus::Independent: return "Independent";
    case IndependenceStatus::Dependent: return "Dependent";
    case IndependenceStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Dynamics Dynamics::with_r(Eigen::VectorXd r) {
  for (int i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0)) {
      throw Error::precondition(
          "DynamicsNotPositive",
          "r_" + std::to_string(i + 1) + " must be positive; got " +
              std::to_string(r[i]));
    }
  }
  Dynamics d;
  d.r = std::move(r);
  return d;
}

Dynamics Dynamics::preferred_for(const SpectralData& sd) {
  Eigen::VectorXd r(sd.rho.size());
  for (int i = 0; i < sd.rho.size(); ++i) {
    r[i] = std::log(sd.rho[i]);
    if (!(r[i] > 0.0)) {
      throw Error::precondition(
          "DynamicsNotPositive",
          "preferred dynamics needs rho(A_i) > 1; color " +
              std::to_string(i + 1) + " has rho = " + std::to_string(sd.rho[i]));
    }
  }
  Dynamics d;
  d.r = std::move(r);
  d.preferred = true;
  return d;
}

TemperatureReport classify_temperature(const SpectralData& sd,
                                       const Dynamics& dyn, double beta,
                                       double band) {
  TemperatureReport rep;
  const int k = static_cast<int>(sd.rho.size());
  rep.beta_c.resize(k);
  bool all_above = true;
  bool all_critical = true;
  for (int i = 0; i < k; ++i) {
    const double lr = std::log(sd.rho[i]);
    rep.beta_c[i] = lr / dyn.r[i];
    const double diff = beta * dyn.r[i] - lr;
    if (std::abs(diff) <= band) {
      all_above = false;
    } else if (diff > 0) {
      all_critical = false;
    } else {
      all_above = false;
      all_critical = false;
    }
  }
  rep.cls = all_above ? TemperatureClass::Subcritical
            : all_critical ? TemperatureClass::Critical
                           : TemperatureClass::Mixed;
  return rep;
}

namespace {

void require_subcritical(const SpectralData& sd, const Dynamics& dyn,
                         double beta, double band) {
  const TemperatureReport rep = classify_temperature(sd, dyn, beta, band);
  if (rep.cls == TemperatureClass::Subcritical) return;
  std::string offending;
  for (int i = 0; i < sd.rho.size(); ++i) {
    if (!(beta * dyn.r[i] - std::log(sd.rho[i]) > band)) {
      if (!offending.empty()) offending += ", ";
      offending += std::to_string(i + 1);
    }
  }
  throw Error::precondition(
      "SpectralPreconditionViolated",
      std::string("beta is ") +
          (rep.cls == TemperatureClass::Critical ? "critical" : "not subcritical") +
          ": beta*r_i <= ln rho(A_i) (within the critical band) for colors {" +
          offending + "}");
}

}  // namespace

Eigen::VectorXd y_vector(const KGraph& g, const SpectralData& sd,
                         const Dynamics& dyn, double beta) {
  require_subcritical(sd, dyn, beta, 1e-9);
  const Eigen::MatrixXd res = resolvent_product(
      g, sd, beta, std::span<const double>(dyn.r.data(), dyn.r.size()));
  Eigen::VectorXd y = res.colwise().sum().transpose();
  for (int v = 0; v < y.size(); ++v) {
    if (y[v] < 1.0 - 1e-12) {
      throw Error::invariant("InvariantBreach",
                             "y_v < 1 at vertex " + g.vertices()[v]);
    }
  }
  return y;
}

double subinvariance_min(const KGraph& g, const Dynamics& dyn, double beta,
                         const Eigen::VectorXd& m) {
  const int k = g.rank();
  std::vector<Eigen::MatrixXd> factors;
  factors.reserve(k);
  const int n = g.vertex_count();
  for (int i = 0; i < k; ++i) {
    factors.push_back(Eigen::MatrixXd::Identity(n, n) -
                      std::exp(-beta * dyn.r[i]) *
                          vertex_matrix(g, i).entries.to_double());
  }
  double worst = m.minCoeff();
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    Eigen::VectorXd v = m;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) v = factors[i] * v;
    }
    worst = std::min(worst, v.minCoeff());
  }
  return worst;
}

StateSpec kms_state_from_eps(const KGraph& g, const SpectralData& sd,
                             const Dynamics& dyn, double beta,
                             Eigen::VectorXd eps, bool rescale,
                             const Tolerances& tol) {
  require_subcritical(sd, dyn, beta, tol.critical_band);
  for (int v = 0; v < eps.size(); ++v) {
    if (eps[v] < 0.0) {
      throw Error::precondition("NegativeEps",
                                "eps must be entrywise nonnegative");
    }
  }
  const Eigen::VectorXd y = y_vector(g, sd, dyn, beta);
  const double scale = eps.dot(y);
  if (std::abs(scale - 1.0) > tol.structural) {
    if (!rescale) {
      throw Error::precondition(
          "NotNormalized", "eps.y = " + std::to_string(scale) +
                               " != 1; pass rescale to normalize");
    }
    if (!(scale > 0.0)) {
      throw Error::precondition("NotNormalized", "eps.y must be positive");
    }
    eps /= scale;
  }
  const Eigen::MatrixXd res = resolvent_product(
      g, sd, beta, std::span<const double>(dyn.r.data(), dyn.r.size()));
  StateSpec st;
  st.beta = beta;
  st.r = dyn.r;
  st.eps = eps;
  st.m = res * eps;
  st.subinvariance_min = subinvariance_min(g, dyn, beta, st.m);
  double ck = 0.0;
  for (int i = 0; i < g.rank(); ++i) {
    const Eigen::MatrixXd ai = vertex_matrix(g, i).entries.to_double();
    ck = std::max(ck, (ai * st.m - std::exp(beta * dyn.r[i]) * st.m)
                          .lpNorm<Eigen::Infinity>());
  }
  st.ck_residual = ck;
  st.kind = ck < tol.structural ? StateKind::CuntzKriegerKMS
                                : StateKind::ToeplitzKMS;
  return st;
}

Eigen::VectorXd eps_from_state(const KGraph& g, const Dynamics& dyn,
                               double beta, const Eigen::VectorXd& m) {
  const int n = g.vertex_count();
  Eigen::VectorXd eps = m;
  for (int i = 0; i < g.rank(); ++i) {
    eps = (Eigen::MatrixXd::Identity(n, n) -
           std::exp(-beta * dyn.r[i]) *
               vertex_matrix(g, i).entries.to_double()) *
          eps;
  }
  return eps;
}

double evaluate_state(const KGraph& g, const StateSpec& st, const Path& mu,
                      const Path& nu) {
  (void)g;
  if (st.kind == StateKind::Ground || st.kind == StateKind::KMSInfinity) {
    if (mu == nu && mu.is_vertex()) return st.eps[mu.source()];
    return 0.0;
  }
  if (!(mu == nu)) return 0.0;
  const double exponent =
      st.beta * mu.degree().dot(std::span<const double>(st.r.data(), st.r.size()));
  return std::exp(-exponent) * st.m[mu.source()];
}

double evaluate_on_product(const KGraph& g, const StateSpec& st,
                           const std::pair<Path, Path>& a,
                           const std::pair<Path, Path>& b) {
  const auto& [mu, nu] = a;
  const auto& [sigma, tau] = b;
  if (mu.source() != nu.source() || sigma.source() != tau.source()) {
    return 0.0;  // t_mu t_nu^* or t_sigma t_tau^* is zero
  }
  double total = 0.0;
  for (const auto& [alpha, eta] : g.minimal_common_extensions(nu, sigma)) {
    total += evaluate_state(g, st, g.compose(mu, alpha), g.compose(tau, eta));
  }
  return total;
}

namespace {

// Interning plus composition/extension memo tables over one graph. Keeps
// the KMS sweeps near linear in the number of (a,b) combinations.
class PathAlgebra {
 public:
  explicit PathAlgebra(const KGraph& g) : g_(&g) {}

  int intern(const Path& p) {
    auto it = ids_.find(p);
    if (it != ids_.end()) return it->second;
    const int id = static_cast<int>(paths_.size());
    paths_.push_back(p);
    ids_.emplace(p, id);
    return id;
  }

  const Path& at(int id) const { return paths_[id]; }

  int compose(int p, int q) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p)) << 32) |
        static_cast<std::uint32_t>(q);
    auto it = compose_memo_.find(key);
    if (it != compose_memo_.end()) return it->second;
    int result = -1;
    if (paths_[p].source() == paths_[q].range()) {
      result = intern(g_->compose(paths_[p], paths_[q]));
    }
    compose_memo_.emplace(key, result);
    return result;
  }

  const std::vector<std::pair<int, int>>& lambda_min(int mu, int nu) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(mu)) << 32) |
        static_cast<std::uint32_t>(nu);
    auto it = lmin_memo_.find(key);
    if (it != lmin_memo_.end()) return it->second;
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [eta, zeta] :
         g_->minimal_common_extensions(paths_[mu], paths_[nu])) {
      pairs.emplace_back(intern(eta), intern(zeta));
    }
    return lmin_memo_.emplace(key, std::move(pairs)).first->second;
  }

 private:
  const KGraph* g_;
  std::vector<Path> paths_;
  std::unordered_map<Path, int, PathHash> ids_;
  std::unordered_map<std::uint64_t, int> compose_memo_;
  std::unordered_map<std::uint64_t, std::vector<std::pair<int, int>>>
      lmin_memo_;
};

}  // namespace

double verify_kms_condition(const KGraph& g, const StateSpec& st,
                            const Degree& bound) {
  if (st.kind == StateKind::Ground || st.kind == StateKind::KMSInfinity) {
    throw Error::precondition("MalformedSpec",
                              "verify_kms_condition needs a KMS-kind state");
  }
  PathAlgebra alg(g);
  std::vector<int> all;
  for (const Degree& n : degrees_up_to(bound)) {
    for (const Path& p : g.paths_of_degree(n)) all.push_back(alg.intern(p));
  }
  if (all.size() >= 65536) {
    throw Error::precondition("TooLarge",
                              "degree bound spans too many paths to sweep");
  }
  std::vector<std::vector<int>> by_source(g.vertex_count());
  for (int id : all) by_source[alg.at(id).source()].push_back(id);

  const std::span<const double> r(st.r.data(), st.r.size());
  auto weight_of = [&](int id) {
    return std::exp(-st.beta * alg.at(id).degree().dot(r));
  };
  auto pack = [](int a, int b, int c, int d) -> std::uint64_t {
    return (static_cast<std::uint64_t>(static_cast<std::uint16_t>(a)) << 48) |
           (static_cast<std::uint64_t>(static_cast<std::uint16_t>(b)) << 32) |
           (static_cast<std::uint64_t>(static_cast<std::uint16_t>(c)) << 16) |
           static_cast<std::uint16_t>(d);
  };

  // For an extension path xi, the composites p.xi over all sweep paths p
  // with s(p) == r(xi), keyed by composite id. mu.alpha == tau.eta resolves
  // to a lookup between two such tables.
  std::unordered_map<int, std::unordered_map<int, int>> ext_tables;
  auto table_for = [&](int xi) -> const std::unordered_map<int, int>& {
    auto it = ext_tables.find(xi);
    if (it != ext_tables.end()) return it->second;
    std::unordered_map<int, int> t;
    for (int p : by_source[alg.at(xi).range()]) {
      const int c = alg.compose(p, xi);
      if (c >= 0) t.emplace(c, p);
    }
    return ext_tables.emplace(xi, std::move(t)).first->second;
  };

  // Accumulate every nonzero phi(t_mu t_nu^* t_sigma t_tau^*); absent keys
  // are exact zeros.
  std::unordered_map<std::uint64_t, double> phi;
  for (int nu : all) {
    for (int sigma : all) {
      if (alg.at(nu).range() != alg.at(sigma).range()) continue;
      for (const auto& [alpha, eta] : alg.lambda_min(nu, sigma)) {
        const auto& left = table_for(alpha);   // composite -> mu
        const auto& right = table_for(eta);    // composite -> tau
        const double msrc = st.m[alg.at(alpha).source()];
        if (left.size() <= right.size()) {
          for (const auto& [c, mu] : left) {
            auto jt = right.find(c);
            if (jt == right.end()) continue;
            phi[pack(mu, nu, sigma, jt->second)] += weight_of(c) * msrc;
          }
        } else {
          for (const auto& [c, tau] : right) {
            auto jt = left.find(c);
            if (jt == left.end()) continue;
            phi[pack(jt->second, nu, sigma, tau)] += weight_of(c) * msrc;
          }
        }
      }
    }
  }

  // KMS exchange residual; tuples with both products zero contribute 0.
  double max_residual = 0.0;
  for (const auto& [key, ab] : phi) {
    const int mu = static_cast<int>(key >> 48);
    const int nu = static_cast<int>((key >> 32) & 0xffff);
    const int sigma = static_cast<int>((key >> 16) & 0xffff);
    const int tau = static_cast<int>(key & 0xffff);
    const double fa = std::exp(
        -st.beta * (alg.at(mu).degree().dot(r) - alg.at(nu).degree().dot(r)));
    auto it = phi.find(pack(sigma, tau, mu, nu));
    const double ba = it == phi.end() ? 0.0 : it->second;
    max_residual = std::max(max_residual, std::abs(ab - fa * ba));
  }
  return max_residual;
}

IndependenceReport rational_independence(std::span<const double> values,
                                         long long max_denominator) {
  if (max_denominator < 1) {
    throw Error::precondition("MalformedSpec",
                              "max_denominator must be at least 1");
  }
  constexpr double kDependentTol = 1e-9;
  IndependenceReport rep;
  rep.max_denominator = max_denominator;
  rep.best_residual = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(values.size());

  auto consider = [&](double delta, long long p, long long q, int i, int j) {
    if (delta < rep.best_residual) {
      rep.best_residual = delta;
      rep.p = p;
      rep.q = q;
      rep.i = i;
      rep.j = j;
    }
  };

  for (int i = 0; i < n; ++i) {
    if (std::abs(values[i]) < kDependentTol) {
      // values[i] ~ 0 is a rational relation on its own
      consider(std::abs(values[i]), 1, 0, i, n > 1 ? (i + 1) % n : i);
    }
  }
  for (int i = 0; i < n && !(rep.best_residual < kDependentTol); ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(values[i]) < kDependentTol) continue;
      // Convergents p/q of values[j]/values[i]; a hit means
      // p * values[i] ~= q * values[j]. Convergents are the best rational
      // approximations of the second kind, so the scan cannot miss a
      // relation with denominator within the cap.
      const double ratio = values[j] / values[i];
      long long p1 = 1, p0 = 0;  // numerators h_{-1}, h_{-2}
      long long q1 = 0, q0 = 1;  // denominators k_{-1}, k_{-2}
      double frac = ratio;
      for (int step = 0; step < 64; ++step) {
        const double floor_a = std::floor(frac);
        if (floor_a > 1e15) break;
        const long long a = static_cast<long long>(floor_a);
        const long long p2 = a * p1 + p0;
        const long long q2 = a * q1 + q0;
        if (q2 > max_denominator || p2 > max_denominator * 16) break;
        const double delta = std::abs(static_cast<double>(p2) * values[i] -
                                      static_cast<double>(q2) * values[j]);
        consider(delta, p2, q2, i, j);
        p0 = p1;
        p1 = p2;
        q0 = q1;
        q1 = q2;
        const double rem = frac - floor_a;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(values[i])) {
      rep.status = IndependenceStatus::Inconclusive;
      return rep;
    }
  }
  if (!std::isfinite(rep.best_residual)) {
    // no candidate relation at all (single nonzero value)
    rep.status = IndependenceStatus::Independent;
    rep.best_residual = n == 1 ? std::abs(values[0]) : 0.0;
    return rep;
  }
  rep.status = rep.best_residual < kDependentTol
                   ? IndependenceStatus::Dependent
                   : IndependenceStatus::Independent;
  return rep;
}

StateSpec kms1_state(const KGraph& g, const SpectralData& sd,
                     long long max_denominator, const Tolerances& tol) {
  const Dynamics dyn = Dynamics::preferred_for(sd);
  StateSpec st;
  st.beta = 1.0;
  st.r = dyn.r;
  st.m = sd.x;
  st.eps = eps_from_state(g, dyn, 1.0, st.m);  // annihilated by each factor
  st.subinvariance_min = subinvariance_min(g, dyn, 1.0, st.m);
  double ck = 0.0;
  for (int i = 0; i < g.rank(); ++i) {
    const Eigen::MatrixXd ai = vertex_matrix(g, i).entries.to_double();
    ck = std::max(ck,
                  (ai * st.m - sd.rho[i] * st.m).lpNorm<Eigen::Infinity>());
  }
  st.ck_residual = ck;
  if (ck > tol.structural) {
    throw Error::invariant("InvariantBreach",
                           "x^Lambda is not an exact common eigenvector");
  }
  st.kind = StateKind::CuntzKriegerKMS;
  std::vector<double> logs(g.rank());
  for (int i = 0; i < g.rank(); ++i) logs[i] = dyn.r[i];
  st.independence = rational_independence(logs, max_denominator);
  st.uniqueness_claimed =
      st.independence->status == IndependenceStatus::Independent;
  return st;
}

StateSpec ground_state(const KGraph& g, const Dynamics& dyn,
                       Eigen::VectorXd eps, const Tolerances& tol) {
  if (eps.size() != g.vertex_count()) {
    throw Error::precondition("NotAProbability",
                              "eps must have one entry per vertex");
  }
  double sum = 0.0;
  for (int v = 0; v < eps.size(); ++v) {
    if (eps[v] < 0.0) {
      throw Error::precondition("NotAProbability",
                                "eps must be entrywise nonnegative");
    }
    sum += eps[v];
  }
  if (std::abs(sum - 1.0) > tol.structural) {
    throw Error::precondition("NotAProbability",
                              "eps must sum to 1; got " + std::to_string(sum));
  }
  StateSpec st;
  st.beta_is_infinite = true;
  st.r = dyn.r;
  st.eps = eps;
  st.m = std::move(eps);  // phi(q_v) = eps_v in the beta -> infinity limit
  st.kind = StateKind::KMSInfinity;
  return st;
}

SimplexSummary simplex_summary(const KGraph& g, const SpectralData& sd,
                               const Dynamics& dyn, double beta,
                               const Tolerances& tol) {
  require_subcritical(sd, dyn, beta, tol.critical_band);
  SimplexSummary sum;
  sum.beta = beta;
  sum.dimension = g.vertex_count() - 1;
  sum.y = y_vector(g, sd, dyn, beta);
  for (int v = 0; v < g.vertex_count(); ++v) {
    Eigen::VectorXd eps = Eigen::VectorXd::Zero(g.vertex_count());
    eps[v] = 1.0 / sum.y[v];
    StateSpec st = kms_state_from_eps(g, sd, dyn, beta, eps, false, tol);
    ExtremePoint pt;
    pt.vertex = v;
    pt.eps = std::move(eps);
    pt.m = st.m;
    pt.ck_residual = st.ck_residual;
    pt.factors_through_ck = st.kind == StateKind::CuntzKriegerKMS;
    sum.points.push_back(std::move(pt));
  }
  return sum;
}

GroundLimitReport ground_limit_check(const KGraph& g, const SpectralData& sd,
                                     const Dynamics& dyn,
                                     const Eigen::VectorXd& eps,
                                     std::span<const double> betas) {
  GroundLimitReport rep;
  for (double beta : betas) {
    const Eigen::VectorXd y = y_vector(g, sd, dyn, beta);
    const Eigen::VectorXd scaled = eps / eps.dot(y);
    const StateSpec st = kms_state_from_eps(g, sd, dyn, beta, scaled);
    rep.betas.push_back(beta);
    rep.linf_error.push_back((st.m - eps).lpNorm<Eigen::Infinity>());
  }
  return rep;
}

}  // namespace kgk
