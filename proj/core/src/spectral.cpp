#include "kgk/spectral.hpp"

#include <cmath>
#include <deque>
#include <string>

namespace kgk {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  const int n = a.size();
  IntMatrix c(n);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < n; ++l) {
      const BigInt& ail = a.at(i, l);
      if (ail == 0) continue;
      for (int j = 0; j < n; ++j) {
        c.at(i, j) += ail * b.at(l, j);
      }
    }
  }
  return c;
}

BigInt IntMatrix::row_sum(int row) const {
  BigInt s = 0;
  for (int j = 0; j < n_; ++j) s += at(row, j);
  return s;
}

Eigen::MatrixXd IntMatrix::to_double() const {
  Eigen::MatrixXd m(n_, n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      m(i, j) = static_cast<double>(at(i, j));
    }
  }
  return m;
}

VertexMatrix vertex_matrix(const KGraph& g, int color) {
  if (color < 0 || color >= g.rank()) {
    throw Error::precondition("MalformedSpec", "color out of range");
  }
  IntMatrix m(g.vertex_count());
  for (int e : g.edges_of_color(color)) {
    m.at(g.edges()[e].range, g.edges()[e].source) += 1;
  }
  return VertexMatrix{color, std::move(m)};
}

std::vector<VertexMatrix> vertex_matrices(const KGraph& g) {
  std::vector<VertexMatrix> out;
  out.reserve(g.rank());
  for (int c = 0; c < g.rank(); ++c) out.push_back(vertex_matrix(g, c));
  return out;
}

bool check_commuting(const KGraph& g) {
  const std::vector<VertexMatrix> a = vertex_matrices(g);
  for (int i = 0; i < g.rank(); ++i) {
    for (int j = i + 1; j < g.rank(); ++j) {
      if (!(a[i].entries * a[j].entries == a[j].entries * a[i].entries)) {
        throw Error::invariant(
            "InvariantBreach",
            "vertex matrices of colors " + std::to_string(i + 1) + " and " +
                std::to_string(j + 1) + " do not commute");
      }
    }
  }
  return true;
}

namespace {

// Reachability by >= 1 step from `start` along arcs w -> v (A(v,w) > 0,
// optionally transposed).
std::vector<bool> reachable(const IntMatrix& a, int start, bool transpose) {
  const int n = a.size();
  std::vector<bool> seen(n, false);
  std::deque<int> queue;
  auto push_neighbors = [&](int w) {
    for (int v = 0; v < n; ++v) {
      const BigInt& entry = transpose ? a.at(w, v) : a.at(v, w);
      if (entry > 0 && !seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  };
  push_neighbors(start);
  while (!queue.empty()) {
    const int w = queue.front();
    queue.pop_front();
    push_neighbors(w);
  }
  return seen;
}

}  // namespace

bool is_irreducible(const IntMatrix& a) {
  const int n = a.size();
  if (n == 0) return false;
  if (n == 1) return a.at(0, 0) > 0;
  const std::vector<bool> fwd = reachable(a, 0, false);
  const std::vector<bool> bwd = reachable(a, 0, true);
  for (int v = 0; v < n; ++v) {
    if (!fwd[v] || !bwd[v]) return false;
  }
  return true;
}

namespace {

struct PfResult {
  double rho = 0.0;
  Eigen::VectorXd x;
};

// Power iteration on B = A + I. B is primitive for irreducible A, so the
// Collatz-Wielandt interval min_i (Bx)_i/x_i .. max_i (Bx)_i/x_i contracts
// to rho(B) and x converges to the positive eigenvector.
PfResult power_iteration(const IntMatrix& a, const PowerIterationOptions& opt) {
  if (!is_irreducible(a)) {
    throw Error::precondition("NotIrreducible",
                              "matrix is not irreducible");
  }
  const int n = a.size();
  const Eigen::MatrixXd b =
      a.to_double() + Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / n);
  double lo = 0.0, hi = 0.0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    Eigen::VectorXd y = b * x;
    lo = (y.array() / x.array()).minCoeff();
    hi = (y.array() / x.array()).maxCoeff();
    x = y / y.lpNorm<1>();
    if (hi - lo < opt.tol * std::max(1.0, hi)) break;
  }
  PfResult res;
  res.rho = 0.5 * (lo + hi) - 1.0;
  res.x = x;
  return res;
}

}  // namespace

double spectral_radius(const IntMatrix& a, const PowerIterationOptions& opt) {
  return power_iteration(a, opt).rho;
}

Eigen::VectorXd pf_eigenvector(const IntMatrix& a,
                               const PowerIterationOptions& opt) {
  return power_iteration(a, opt).x;
}

SpectralData common_pf_eigenvector(const KGraph& g,
                                   const PowerIterationOptions& opt) {
  const std::vector<VertexMatrix> a = vertex_matrices(g);
  SpectralData sd;
  sd.irreducible.resize(g.rank());
  std::string failing;
  for (int c = 0; c < g.rank(); ++c) {
    sd.irreducible[c] = is_irreducible(a[c].entries);
    if (!sd.irreducible[c]) {
      if (!failing.empty()) failing += ", ";
      failing += std::to_string(c + 1);
    }
  }
  if (!failing.empty()) {
    throw Error::precondition(
        "NotCoordinatewiseIrreducible",
        "vertex matrices of colors {" + failing + "} are reducible");
  }
  sd.rho.resize(g.rank());
  sd.residual.resize(g.rank());
  sd.x = pf_eigenvector(a[0].entries, opt);
  for (int c = 0; c < g.rank(); ++c) {
    sd.rho[c] = spectral_radius(a[c].entries, opt);
    const Eigen::MatrixXd ac = a[c].entries.to_double();
    sd.residual[c] = (ac * sd.x - sd.rho[c] * sd.x).lpNorm<Eigen::Infinity>();
  }
  return sd;
}

IntMatrix matrix_power(const KGraph& g, const Degree& n) {
  if (n.rank() != g.rank()) {
    throw Error::precondition("MalformedDegree",
                              "degree rank differs from graph rank");
  }
  IntMatrix result = IntMatrix::identity(g.vertex_count());
  for (int c = 0; c < g.rank(); ++c) {
    IntMatrix base = vertex_matrix(g, c).entries;
    int e = n[c];
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
  }
  return result;
}

Eigen::MatrixXd resolvent_product(const KGraph& g, const SpectralData& sd,
                                  double beta, std::span<const double> r) {
  if (static_cast<int>(r.size()) != g.rank()) {
    throw Error::precondition("MalformedSpec",
                              "r must have one entry per color");
  }
  std::string offending;
  for (int c = 0; c < g.rank(); ++c) {
    if (!(beta * r[c] > std::log(sd.rho[c]))) {
      if (!offending.empty()) offending += ", ";
      offending += std::to_string(c + 1);
    }
  }
  if (!offending.empty()) {
    throw Error::precondition(
        "SpectralPreconditionViolated",
        "beta*r_i <= ln rho(A_i) for colors {" + offending + "}");
  }
  const int n = g.vertex_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (int c = 0; c < g.rank(); ++c) {
    const Eigen::MatrixXd factor =
        Eigen::MatrixXd::Identity(n, n) -
        std::exp(-beta * r[c]) * vertex_matrix(g, c).entries.to_double();
    m = factor.partialPivLu().solve(m);
  }
  return m;
}

}  // namespace kgk
