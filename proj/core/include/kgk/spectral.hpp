#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "kgk/kgraph.hpp"

namespace kgk {

using BigInt = boost::multiprecision::cpp_int;

// Dense square matrix with exact integer entries, indexed by vertices.
// Path counts grow fast, so all counting arithmetic stays exact.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}
  static IntMatrix identity(int n);

  int size() const { return n_; }
  BigInt& at(int row, int col) { return a_[static_cast<std::size_t>(row) * n_ + col]; }
  const BigInt& at(int row, int col) const {
    return a_[static_cast<std::size_t>(row) * n_ + col];
  }

  bool operator==(const IntMatrix&) const = default;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

  BigInt row_sum(int row) const;
  Eigen::MatrixXd to_double() const;

 private:
  int n_ = 0;
  std::vector<BigInt> a_;
};

// A_color(v,w) counts the color-edges with range v and source w.
struct VertexMatrix {
  int color = 0;  // 0-based
  IntMatrix entries;
};

VertexMatrix vertex_matrix(const KGraph& g, int color);
std::vector<VertexMatrix> vertex_matrices(const KGraph& g);

// Exact commutation A_i A_j == A_j A_i; true for every valid graph. A false
// outcome indicates corrupt square data and raises Error(Invariant).
bool check_commuting(const KGraph& g);

// Strong connectivity of the digraph with an arc w -> v iff A(v,w) > 0
// (paths of length >= 1 between every ordered pair).
bool is_irreducible(const IntMatrix& a);

struct PowerIterationOptions {
  double tol = 1e-12;
  int max_iterations = 100000;
};

// Power iteration on A + I; requires is_irreducible(a).
double spectral_radius(const IntMatrix& a, const PowerIterationOptions& = {});

// Positive eigenvector with l1-norm 1; requires is_irreducible(a).
Eigen::VectorXd pf_eigenvector(const IntMatrix& a,
                               const PowerIterationOptions& = {});

struct SpectralData {
  Eigen::VectorXd rho;            // per color
  Eigen::VectorXd x;              // common PF eigenvector, positive, sum 1
  std::vector<bool> irreducible;  // per color
  Eigen::VectorXd residual;       // per color, ||A_i x - rho_i x||_inf
};

// Computes x from A_1 and verifies it against every other color.
// Throws NotCoordinatewiseIrreducible naming the failing colors.
SpectralData common_pf_eigenvector(const KGraph& g,
                                   const PowerIterationOptions& = {});

// A^n = prod_i A_i^{n_i}, exact; order-independent by commutation.
IntMatrix matrix_power(const KGraph& g, const Degree& n);

// prod_i (I - e^{-beta r_i} A_i)^{-1} via k successive LU solves.
// Requires beta * r_i > ln rho(A_i) for every color; otherwise throws
// SpectralPreconditionViolated naming the offending colors.
Eigen::MatrixXd resolvent_product(const KGraph& g, const SpectralData& sd,
                                  double beta, std::span<const double> r);

}  // namespace kgk
