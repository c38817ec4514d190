#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgk/kms.hpp"

namespace kgk {

// span{h_lambda : d(lambda) <= cutoff} with a deterministic basis order:
// degree-lexicographic, then path id.
struct TruncatedSpace {
  const KGraph* graph = nullptr;
  Degree cutoff;
  std::vector<Path> basis;
  std::unordered_map<Path, int, PathHash> index;

  int dim() const { return static_cast<int>(basis.size()); }
  // -1 when the path lies outside the cutoff
  int index_of(const Path& p) const {
    auto it = index.find(p);
    return it == index.end() ? -1 : it->second;
  }
};

// Throws TooLarge when the basis would exceed size_cap.
TruncatedSpace build_space(const KGraph& g, const Degree& cutoff,
                           std::size_t size_cap = 200000);

// Sparse column-major operator with exact integer entries. T_mu and Q_v have
// at most one entry per column; products and sums stay integer.
class SparseOp {
 public:
  SparseOp() = default;
  explicit SparseOp(int dim) : dim_(dim), cols_(dim) {}
  static SparseOp identity(int dim);

  int dim() const { return dim_; }
  void add(int row, int col, long long value);
  const std::vector<std::pair<int, long long>>& column(int j) const {
    return cols_[j];
  }

  SparseOp transpose() const;
  friend SparseOp operator*(const SparseOp& a, const SparseOp& b);
  friend SparseOp operator+(const SparseOp& a, const SparseOp& b);
  friend SparseOp operator-(const SparseOp& a, const SparseOp& b);

  long long coeff(int row, int col) const;
  std::vector<long long> diagonal() const;
  // max |entry| over the given columns (all columns if empty filter)
  long long max_abs_on(const std::vector<int>& columns) const;
  long long max_abs() const;

 private:
  void normalize_column(int j);
  int dim_ = 0;
  std::vector<std::vector<std::pair<int, long long>>> cols_;
};

// T_mu h_lambda = h_{mu.lambda} when composable and inside the cutoff,
// else 0. Q_v h_lambda = [r(lambda) = v] h_lambda.
SparseOp op_T(const TruncatedSpace& sp, const Path& mu);
SparseOp op_Q(const TruncatedSpace& sp, int vertex);

// Per-(vertex, color) support of the Cuntz-Krieger defect projection
// Q_v - sum_{lambda in v Lambda^{e_i}} T_lambda T_lambda^*.
struct CkDefect {
  int vertex = 0;
  int color = 0;
  long long support = 0;             // columns of the truncated space
  long long support_extendable = 0;  // columns with d(xi)_i >= 1; expected 0
};

struct RelationReport {
  // max absolute deviation per relation, expected exactly 0
  std::map<std::string, long long> max_dev;
  std::size_t interior_size = 0;
  bool ck_fails_strictly = false;
  std::vector<CkDefect> ck_defects;
};

// Checks (T1)-(T5) as exact sparse identities on the interior columns
// {d(xi) <= cutoff - 2*bound} and reports the (CK) defect projections.
// Throws InteriorEmpty when the window is empty.
RelationReport verify_relations(const TruncatedSpace& sp, const Degree& bound);

struct InclusionExclusionReport {
  long long max_dev = 0;    // prod_{i in K}(Q_v - q_i) vs alternating sum
  bool diagonal_01 = true;  // the product is a diagonal 0/1 projection
};

InclusionExclusionReport inclusion_exclusion_check(
    const TruncatedSpace& sp, int vertex, const std::vector<int>& colors);

struct WeightedValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

// sum_lambda e^{-beta r.d(lambda)} eps_{s(lambda)} (a h_lambda | h_lambda)
// over the truncated basis, with a geometric bound on the dropped tail
// (valid for operators of norm <= 1). Requires Subcritical beta.
WeightedValue weighted_state(const TruncatedSpace& sp, const SpectralData& sd,
                             const Dynamics& dyn, double beta,
                             const Eigen::VectorXd& eps, const SparseOp& a);

struct GroundCheckReport {
  bool passed = false;
  long long surviving_pairs = 0;  // vertex pairs carrying eps_v
  double max_violation = 0.0;     // |phi| on pairs that must vanish
  bool modulus_nonincreasing = true;
};

// Checks phi(t_mu t_nu^*) = 0 whenever r.d(mu) > 0 or r.d(nu) > 0 over all
// pairs up to `bound`, and that the half-plane modulus
// e^{-y r.(d(mu)-d(nu))}|phi(t_sigma t_tau^* t_mu t_nu^*)| is non-increasing
// in y over {1,10,100} for every surviving pair.
GroundCheckReport ground_condition_check(const KGraph& g, const StateSpec& st,
                                         const Degree& bound);

struct OperatorKmsReport {
  double kms_residual = 0.0;   // exchange residual through weighted_state
  double tail_bound = 0.0;     // bound applicable to kms_residual
  double telescoping_residual = 0.0;  // extension identity, j in {0,1,2}
  double cs_residual = 0.0;    // Cauchy-Schwarz comparisons
  std::size_t pairs_checked = 0;
};

// Recomputes the KMS condition entirely through the truncated
// representation, independent of the closed-form state values, and
// spot-checks the telescoping extension identity and the Cauchy-Schwarz
// bounds. Requires Subcritical beta.
OperatorKmsReport kms_residual_operator_level(const TruncatedSpace& sp,
                                              const StateSpec& st,
                                              const SpectralData& sd,
                                              const Degree& bound);

}  // namespace kgk
