#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kgk/kgraph.hpp"
#include "kgk/spectral.hpp"

namespace kgk {

// Default tolerances: structural equalities at 1e-10, limit and convergence
// claims at 1e-6. Near-critical classification band 1e-9.
struct Tolerances {
  double structural = 1e-10;
  double convergence = 1e-6;
  double critical_band = 1e-9;
};

// The one-parameter dynamics determined by r in (0,infty)^k; the preferred
// dynamics takes r_i = ln rho(A_i).
struct Dynamics {
  Eigen::VectorXd r;
  bool preferred = false;

  static Dynamics with_r(Eigen::VectorXd r);
  static Dynamics preferred_for(const SpectralData& sd);
};

enum class TemperatureClass { Subcritical, Critical, Mixed };

struct TemperatureReport {
  TemperatureClass cls = TemperatureClass::Mixed;
  Eigen::VectorXd beta_c;  // per color: ln rho_i / r_i
};

TemperatureReport classify_temperature(const SpectralData& sd,
                                       const Dynamics& dyn, double beta,
                                       double band = 1e-9);

// y_v = sum over paths with source v of e^{-beta r.d(mu)}; equals the column
// sums of the resolvent product. Entrywise >= 1. Requires Subcritical.
Eigen::VectorXd y_vector(const KGraph& g, const SpectralData& sd,
                         const Dynamics& dyn, double beta);

enum class StateKind { ToeplitzKMS, CuntzKriegerKMS, Ground, KMSInfinity };

const char* to_string(StateKind kind);

enum class IndependenceStatus { Independent, Dependent, Inconclusive };

const char* to_string(IndependenceStatus status);

// Outcome of the continued-fraction scan for rational relations among
// positive reals. Dependent carries a witness p * values[i] ~= q * values[j].
// Heuristic only; Independent is never a proof.
struct IndependenceReport {
  IndependenceStatus status = IndependenceStatus::Inconclusive;
  long long p = 0;
  long long q = 0;
  int i = -1;
  int j = -1;
  double best_residual = 0.0;
  long long max_denominator = 0;
};

IndependenceReport rational_independence(std::span<const double> values,
                                         long long max_denominator);

// A KMS / ground state record: beta, the dynamics r, the boundary vector
// eps, the vertex measure m = (phi(q_v)) and diagnostic residuals.
struct StateSpec {
  double beta = 0.0;
  bool beta_is_infinite = false;
  Eigen::VectorXd r;
  Eigen::VectorXd eps;
  Eigen::VectorXd m;
  StateKind kind = StateKind::ToeplitzKMS;
  // Most negative entry of prod_{i in K}(I - e^{-beta r_i}A_i) m over all
  // subsets K; >= -1e-12 for genuine KMS states.
  double subinvariance_min = 0.0;
  // max_i ||A_i m - e^{beta r_i} m||_inf; ~0 iff the state factors through
  // the Cuntz-Krieger quotient.
  double ck_residual = 0.0;
  std::optional<IndependenceReport> independence;
  bool uniqueness_claimed = false;
};

// min over subsets K of {1..k} and vertices v of
// (prod_{i in K}(I - e^{-beta r_i}A_i) m)_v.
double subinvariance_min(const KGraph& g, const Dynamics& dyn, double beta,
                         const Eigen::VectorXd& m);

// Builds the KMS_beta state phi_eps with m = prod(I - e^{-beta r_i}A_i)^{-1} eps.
// Requires Subcritical beta, eps >= 0 and eps.y == 1 (pass rescale to
// normalize instead of failing). Throws SpectralPreconditionViolated,
// NegativeEps or NotNormalized.
StateSpec kms_state_from_eps(const KGraph& g, const SpectralData& sd,
                             const Dynamics& dyn, double beta,
                             Eigen::VectorXd eps, bool rescale = false,
                             const Tolerances& tol = {});

// The inverse boundary map eps = prod_i (I - e^{-beta r_i}A_i) m.
// Negative output entries signal that m is not subinvariant; they are
// returned, not raised.
Eigen::VectorXd eps_from_state(const KGraph& g, const Dynamics& dyn,
                               double beta, const Eigen::VectorXd& m);

// phi(t_mu t_nu^*). For KMS kinds: delta_{mu,nu} e^{-beta r.d(mu)} m_{s(mu)}.
// For Ground/KMSInfinity: eps_v when mu == nu == v, else 0.
double evaluate_state(const KGraph& g, const StateSpec& st, const Path& mu,
                      const Path& nu);

// phi(t_mu t_nu^* t_sigma t_tau^*) via the finite expansion over
// Lambda^min(nu, sigma).
double evaluate_on_product(const KGraph& g, const StateSpec& st,
                           const std::pair<Path, Path>& a,
                           const std::pair<Path, Path>& b);

// Sweeps all spanning pairs a = t_mu t_nu^*, b = t_sigma t_tau^* with
// degrees <= bound and returns the largest
// |phi(ab) - e^{-beta r.(d(mu)-d(nu))} phi(ba)|.
double verify_kms_condition(const KGraph& g, const StateSpec& st,
                            const Degree& bound);

// The KMS_1 state of the preferred dynamics: m = x^Lambda, which factors
// through the Cuntz-Krieger quotient. Uniqueness is claimed only when the
// independence heuristic passes on (ln rho_i).
StateSpec kms1_state(const KGraph& g, const SpectralData& sd,
                     long long max_denominator = 1000000,
                     const Tolerances& tol = {});

// The KMS_infinity state phi_eps for a probability measure eps on vertices.
// Throws NotAProbability.
StateSpec ground_state(const KGraph& g, const Dynamics& dyn,
                       Eigen::VectorXd eps, const Tolerances& tol = {});

struct ExtremePoint {
  int vertex = 0;
  Eigen::VectorXd eps;  // delta_v / y_v
  Eigen::VectorXd m;
  bool factors_through_ck = false;
  double ck_residual = 0.0;
};

// The simplex Sigma_beta = {eps >= 0 : eps.y == 1} of KMS_beta states:
// its |Lambda^0| extreme points and dimension |Lambda^0| - 1.
struct SimplexSummary {
  double beta = 0.0;
  int dimension = 0;
  Eigen::VectorXd y;
  std::vector<ExtremePoint> points;
};

SimplexSummary simplex_summary(const KGraph& g, const SpectralData& sd,
                               const Dynamics& dyn, double beta,
                               const Tolerances& tol = {});

// m-vectors of the KMS_{beta_j} states with boundary eps/(eps.y_{beta_j});
// they converge entrywise to eps as beta_j grows.
struct GroundLimitReport {
  std::vector<double> betas;
  std::vector<double> linf_error;
};

GroundLimitReport ground_limit_check(const KGraph& g, const SpectralData& sd,
                                     const Dynamics& dyn,
                                     const Eigen::VectorXd& eps,
                                     std::span<const double> betas);

}  // namespace kgk
