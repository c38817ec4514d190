#include "kgk/repsim.hpp"

#include <algorithm>
#include <cmath>

namespace kgk {

TruncatedSpace build_space(const KGraph& g, const Degree& cutoff,
                           std::size_t size_cap) {
  TruncatedSpace sp;
  sp.graph = &g;
  sp.cutoff = cutoff;
  for (const Degree& n : degrees_up_to(cutoff)) {
    std::vector<Path> block = g.paths_of_degree(n);
    if (sp.basis.size() + block.size() > size_cap) {
      throw Error::precondition(
          "TooLarge", "basis would exceed the size cap of " +
                          std::to_string(size_cap) + " paths");
    }
    for (Path& p : block) sp.basis.push_back(std::move(p));
  }
  sp.index.reserve(sp.basis.size());
  for (int i = 0; i < sp.dim(); ++i) sp.index.emplace(sp.basis[i], i);
  return sp;
}

SparseOp SparseOp::identity(int dim) {
  SparseOp op(dim);
  for (int j = 0; j < dim; ++j) op.cols_[j].emplace_back(j, 1);
  return op;
}

void SparseOp::add(int row, int col, long long value) {
  if (value == 0) return;
  cols_[col].emplace_back(row, value);
  normalize_column(col);
}

void SparseOp::normalize_column(int j) {
  auto& col = cols_[j];
  std::sort(col.begin(), col.end());
  std::size_t out = 0;
  for (std::size_t t = 0; t < col.size(); ++t) {
    if (out > 0 && col[out - 1].first == col[t].first) {
      col[out - 1].second += col[t].second;
    } else {
      col[out++] = col[t];
    }
  }
  col.resize(out);
  std::erase_if(col, [](const auto& e) { return e.second == 0; });
}

SparseOp SparseOp::transpose() const {
  SparseOp t(dim_);
  for (int j = 0; j < dim_; ++j) {
    for (const auto& [row, value] : cols_[j]) {
      t.cols_[row].emplace_back(j, value);
    }
  }
  for (int j = 0; j < dim_; ++j) {
    std::sort(t.cols_[j].begin(), t.cols_[j].end());
  }
  return t;
}

SparseOp operator*(const SparseOp& a, const SparseOp& b) {
  SparseOp c(a.dim_);
  std::vector<std::pair<int, long long>> acc;
  for (int j = 0; j < b.dim_; ++j) {
    acc.clear();
    for (const auto& [mid, bv] : b.cols_[j]) {
      for (const auto& [row, av] : a.cols_[mid]) {
        acc.emplace_back(row, av * bv);
      }
    }
    std::sort(acc.begin(), acc.end());
    auto& col = c.cols_[j];
    for (const auto& [row, value] : acc) {
      if (!col.empty() && col.back().first == row) {
        col.back().second += value;
      } else {
        col.emplace_back(row, value);
      }
    }
    std::erase_if(col, [](const auto& e) { return e.second == 0; });
  }
  return c;
}

SparseOp operator+(const SparseOp& a, const SparseOp& b) {
  SparseOp c(a.dim_);
  for (int j = 0; j < a.dim_; ++j) {
    c.cols_[j] = a.cols_[j];
    c.cols_[j].insert(c.cols_[j].end(), b.cols_[j].begin(), b.cols_[j].end());
    c.normalize_column(j);
  }
  return c;
}

SparseOp operator-(const SparseOp& a, const SparseOp& b) {
  SparseOp c(a.dim_);
  for (int j = 0; j < a.dim_; ++j) {
    c.cols_[j] = a.cols_[j];
    for (const auto& [row, value] : b.cols_[j]) {
      c.cols_[j].emplace_back(row, -value);
    }
    c.normalize_column(j);
  }
  return c;
}

long long SparseOp::coeff(int row, int col) const {
  for (const auto& [r, v] : cols_[col]) {
    if (r == row) return v;
  }
  return 0;
}

std::vector<long long> SparseOp::diagonal() const {
  std::vector<long long> d(dim_, 0);
  for (int j = 0; j < dim_; ++j) d[j] = coeff(j, j);
  return d;
}

long long SparseOp::max_abs_on(const std::vector<int>& columns) const {
  long long m = 0;
  for (int j : columns) {
    for (const auto& [row, value] : cols_[j]) {
      m = std::max(m, std::abs(value));
    }
  }
  return m;
}

long long SparseOp::max_abs() const {
  long long m = 0;
  for (int j = 0; j < dim_; ++j) {
    for (const auto& [row, value] : cols_[j]) {
      m = std::max(m, std::abs(value));
    }
  }
  return m;
}

SparseOp op_T(const TruncatedSpace& sp, const Path& mu) {
  const KGraph& g = *sp.graph;
  SparseOp op(sp.dim());
  for (int j = 0; j < sp.dim(); ++j) {
    const Path& lambda = sp.basis[j];
    if (mu.source() != lambda.range()) continue;
    if (!(mu.degree() + lambda.degree()).leq(sp.cutoff)) continue;  // cutoff
    const int row = sp.index_of(g.compose(mu, lambda));
    if (row >= 0) op.add(row, j, 1);
  }
  return op;
}

SparseOp op_Q(const TruncatedSpace& sp, int vertex) {
  SparseOp op(sp.dim());
  for (int j = 0; j < sp.dim(); ++j) {
    if (sp.basis[j].range() == vertex) op.add(j, j, 1);
  }
  return op;
}

namespace {

// q_J = sum over mu in v.Lambda^{e_J} of T_mu T_mu^*: the diagonal projection
// onto basis paths with range v whose degree dominates e_J. Exact on the
// whole truncated space.
SparseOp range_projection_sum(const TruncatedSpace& sp, int vertex,
                              const Degree& n) {
  SparseOp op(sp.dim());
  for (int j = 0; j < sp.dim(); ++j) {
    const Path& xi = sp.basis[j];
    if (xi.range() != vertex) continue;
    if (!n.leq(xi.degree())) continue;
    // xi factors uniquely as lambda.xi' with lambda in v.Lambda^n
    op.add(j, j, 1);
  }
  return op;
}

std::vector<int> interior_columns(const TruncatedSpace& sp,
                                  const Degree& margin) {
  std::vector<int> cols;
  for (int j = 0; j < sp.dim(); ++j) {
    if ((sp.basis[j].degree() + margin).leq(sp.cutoff)) cols.push_back(j);
  }
  return cols;
}

}  // namespace

RelationReport verify_relations(const TruncatedSpace& sp,
                                const Degree& bound) {
  const KGraph& g = *sp.graph;
  RelationReport rep;
  const Degree margin = 2 * bound;
  const std::vector<int> interior = interior_columns(sp, margin);
  rep.interior_size = interior.size();
  if (interior.empty()) {
    throw Error::precondition(
        "InteriorEmpty",
        "no columns satisfy d(xi) + 2*bound <= cutoff; enlarge the space");
  }

  std::vector<Path> gens;
  for (const Degree& n : degrees_up_to(bound)) {
    for (const Path& p : g.paths_of_degree(n)) gens.push_back(p);
  }
  std::vector<SparseOp> t_ops;
  t_ops.reserve(gens.size());
  for (const Path& p : gens) t_ops.push_back(op_T(sp, p));
  std::vector<SparseOp> q_ops;
  for (int v = 0; v < g.vertex_count(); ++v) q_ops.push_back(op_Q(sp, v));

  // (T1): the Q_v are mutually orthogonal projections summing to 1.
  long long dev = 0;
  {
    SparseOp sum(sp.dim());
    for (int v = 0; v < g.vertex_count(); ++v) {
      sum = sum + q_ops[v];
      for (int w = 0; w < g.vertex_count(); ++w) {
        SparseOp prod = q_ops[v] * q_ops[w];
        if (v == w) prod = prod - q_ops[v];
        dev = std::max(dev, prod.max_abs());
      }
    }
    dev = std::max(dev, (sum - SparseOp::identity(sp.dim())).max_abs());
    rep.max_dev["T1"] = dev;
  }

  // (T2): T_lambda T_mu == T_{lambda.mu} for composable pairs.
  dev = 0;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = 0; b < gens.size(); ++b) {
      if (gens[a].source() != gens[b].range()) continue;
      const SparseOp lhs = t_ops[a] * t_ops[b];
      const SparseOp rhs = op_T(sp, g.compose(gens[a], gens[b]));
      dev = std::max(dev, (lhs - rhs).max_abs_on(interior));
    }
  }
  rep.max_dev["T2"] = dev;

  // (T3): T_lambda^* T_lambda == Q_{s(lambda)}.
  dev = 0;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    const SparseOp lhs = t_ops[a].transpose() * t_ops[a];
    dev = std::max(dev, (lhs - q_ops[gens[a].source()]).max_abs_on(interior));
  }
  rep.max_dev["T3"] = dev;

  // (T4): Q_v >= sum_{lambda in v.Lambda^n} T_lambda T_lambda^*, plus
  // mutual orthogonality of the range projections of each degree. Checked
  // on the generator degrees e_i and on every n <= bound.
  dev = 0;
  std::vector<Degree> t4_degrees = degrees_up_to(bound);
  for (int c = 0; c < g.rank(); ++c) {
    const Degree ei = Degree::unit(g.rank(), c);
    bool present = false;
    for (const Degree& n : t4_degrees) present = present || n == ei;
    if (!present && ei.leq(sp.cutoff)) t4_degrees.push_back(ei);
  }
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (const Degree& n : t4_degrees) {
      SparseOp sum(sp.dim());
      std::vector<long long> multiplicity(sp.dim(), 0);
      for (const Path& lambda : g.paths_of_degree(n, v)) {
        const SparseOp tt = op_T(sp, lambda);
        const SparseOp proj = tt * tt.transpose();
        sum = sum + proj;
        for (long long j = 0; j < sp.dim(); ++j) {
          multiplicity[j] += proj.coeff(static_cast<int>(j),
                                        static_cast<int>(j));
        }
      }
      const SparseOp diff = q_ops[v] - sum;
      for (int j : interior) {
        for (const auto& [row, value] : diff.column(j)) {
          if (row != j || value < 0 || value > 1) {
            dev = std::max(dev, std::abs(value));
          }
        }
        // orthogonality: no basis vector hit by two range projections
        if (multiplicity[j] > 1) dev = std::max(dev, multiplicity[j] - 1);
      }
    }
  }
  rep.max_dev["T4"] = dev;

  // (T5): T_mu^* T_nu == sum over Lambda^min(mu,nu) of T_eta T_zeta^*.
  dev = 0;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = 0; b < gens.size(); ++b) {
      const SparseOp lhs = t_ops[a].transpose() * t_ops[b];
      SparseOp rhs(sp.dim());
      for (const auto& [eta, zeta] :
           g.minimal_common_extensions(gens[a], gens[b])) {
        rhs = rhs + op_T(sp, eta) * op_T(sp, zeta).transpose();
      }
      dev = std::max(dev, (lhs - rhs).max_abs_on(interior));
    }
  }
  rep.max_dev["T5"] = dev;

  // (CK) defect projections Q_v - q_{e_i}: supported exactly on the columns
  // with no color-i component, so the Toeplitz representation never
  // satisfies (CK) on the whole space.
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int c = 0; c < g.rank(); ++c) {
      const Degree ei = Degree::unit(g.rank(), c);
      const SparseOp defect =
          q_ops[v] - range_projection_sum(sp, v, ei);
      CkDefect d;
      d.vertex = v;
      d.color = c;
      for (int j : interior) {
        const long long val = defect.coeff(j, j);
        if (val != 0) {
          d.support += 1;
          if (sp.basis[j].degree()[c] >= 1) d.support_extendable += 1;
        }
      }
      if (d.support > 0) rep.ck_fails_strictly = true;
      rep.ck_defects.push_back(d);
    }
  }
  return rep;
}

InclusionExclusionReport inclusion_exclusion_check(
    const TruncatedSpace& sp, int vertex, const std::vector<int>& colors) {
  const KGraph& g = *sp.graph;
  Degree ek = Degree::zero(g.rank());
  for (int c : colors) ek = ek + Degree::unit(g.rank(), c);
  if (!ek.leq(sp.cutoff)) {
    throw Error::precondition("InteriorEmpty",
                              "cutoff too small for degree e_K");
  }
  const SparseOp qv = op_Q(sp, vertex);
  // prod_{i in K} (Q_v - q_i)
  SparseOp prod = qv;
  for (int c : colors) {
    prod = prod * (qv - range_projection_sum(
                            sp, vertex, Degree::unit(g.rank(), c)));
  }
  // sum_{J subset K} (-1)^{|J|} q_J with q_empty = Q_v
  SparseOp sum(sp.dim());
  const int k = static_cast<int>(colors.size());
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Degree ej = Degree::zero(g.rank());
    int bits = 0;
    for (int t = 0; t < k; ++t) {
      if (mask & (1u << t)) {
        ej = ej + Degree::unit(g.rank(), colors[t]);
        ++bits;
      }
    }
    SparseOp qj = mask == 0 ? qv : range_projection_sum(sp, vertex, ej);
    if (bits % 2 == 1) {
      sum = sum - qj;
    } else {
      sum = sum + qj;
    }
  }
  InclusionExclusionReport rep;
  rep.max_dev = (prod - sum).max_abs();
  for (int j = 0; j < sp.dim(); ++j) {
    for (const auto& [row, value] : prod.column(j)) {
      if (row != j || value < 0 || value > 1) rep.diagonal_01 = false;
    }
  }
  return rep;
}

namespace {

double tail_bound_for(const TruncatedSpace& sp, const SpectralData& sd,
                      const Dynamics& dyn, double beta,
                      const Eigen::VectorXd& eps) {
  // eps <= c * x entrywise with c = max eps_v / x_v, and A^n x = rho^n x,
  // so the dropped mass is at most c * (full product - truncated product)
  // of scalar geometric series in theta_i = e^{-beta r_i} rho_i.
  double c = 0.0;
  for (int v = 0; v < eps.size(); ++v) {
    c = std::max(c, eps[v] / sd.x[v]);
  }
  double full = 1.0;
  double trunc = 1.0;
  for (int i = 0; i < sd.rho.size(); ++i) {
    const double theta = std::exp(-beta * dyn.r[i]) * sd.rho[i];
    full /= (1.0 - theta);
    trunc *= (1.0 - std::pow(theta, sp.cutoff[i] + 1)) / (1.0 - theta);
  }
  return c * (full - trunc) * (1.0 + 1e-9);
}

}  // namespace

WeightedValue weighted_state(const TruncatedSpace& sp, const SpectralData& sd,
                             const Dynamics& dyn, double beta,
                             const Eigen::VectorXd& eps, const SparseOp& a) {
  const TemperatureReport t = classify_temperature(sd, dyn, beta);
  if (t.cls != TemperatureClass::Subcritical) {
    throw Error::precondition("SpectralPreconditionViolated",
                              "weighted_state needs subcritical beta");
  }
  const std::span<const double> r(dyn.r.data(), dyn.r.size());
  WeightedValue out;
  for (int j = 0; j < sp.dim(); ++j) {
    const long long diag = a.coeff(j, j);
    if (diag == 0) continue;
    const Path& lambda = sp.basis[j];
    out.value += std::exp(-beta * lambda.degree().dot(r)) *
                 eps[lambda.source()] * static_cast<double>(diag);
  }
  out.tail_bound = tail_bound_for(sp, sd, dyn, beta, eps);
  return out;
}

GroundCheckReport ground_condition_check(const KGraph& g, const StateSpec& st,
                                         const Degree& bound) {
  GroundCheckReport rep;
  rep.passed = true;
  const std::span<const double> r(st.r.data(), st.r.size());
  std::vector<Path> all;
  for (const Degree& n : degrees_up_to(bound)) {
    for (const Path& p : g.paths_of_degree(n)) all.push_back(p);
  }
  std::vector<std::pair<Path, Path>> survivors;
  for (const Path& mu : all) {
    for (const Path& nu : all) {
      const double value = evaluate_state(g, st, mu, nu);
      if (mu.degree().dot(r) > 0 || nu.degree().dot(r) > 0) {
        rep.max_violation = std::max(rep.max_violation, std::abs(value));
        if (value != 0.0) rep.passed = false;
      } else if (value != 0.0) {
        rep.surviving_pairs += 1;
        survivors.emplace_back(mu, nu);
      }
    }
  }
  // Half-plane boundedness on the surviving pairs: the modulus
  // e^{-y r.(d(mu)-d(nu))} |phi(t_sigma t_tau^* t_mu t_nu^*)| must not grow
  // with y in {1, 10, 100}.
  for (const auto& [mu, nu] : survivors) {
    for (const Path& sigma : all) {
      for (const Path& tau : all) {
        const double base =
            std::abs(evaluate_on_product(g, st, {sigma, tau}, {mu, nu}));
        if (base == 0.0) continue;
        const double drop = mu.degree().dot(r) - nu.degree().dot(r);
        double prev = std::exp(-1.0 * drop) * base;
        for (double y : {10.0, 100.0}) {
          const double cur = std::exp(-y * drop) * base;
          if (cur > prev * (1.0 + 1e-12)) {
            rep.modulus_nonincreasing = false;
            rep.passed = false;
          }
          prev = cur;
        }
      }
    }
  }
  return rep;
}

OperatorKmsReport kms_residual_operator_level(const TruncatedSpace& sp,
                                              const StateSpec& st,
                                              const SpectralData& sd,
                                              const Degree& bound) {
  const KGraph& g = *sp.graph;
  const Dynamics dyn = Dynamics::with_r(st.r);
  const std::span<const double> r(st.r.data(), st.r.size());
  OperatorKmsReport rep;

  std::vector<Path> all;
  for (const Degree& n : degrees_up_to(bound)) {
    for (const Path& p : g.paths_of_degree(n)) all.push_back(p);
  }
  std::vector<SparseOp> t_ops;
  t_ops.reserve(all.size());
  for (const Path& p : all) t_ops.push_back(op_T(sp, p));

  // spanning elements t_mu t_nu^* with s(mu) == s(nu)
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < static_cast<int>(all.size()); ++a) {
    for (int b = 0; b < static_cast<int>(all.size()); ++b) {
      if (all[a].source() == all[b].source()) pairs.emplace_back(a, b);
    }
  }
  std::vector<SparseOp> pair_ops;
  pair_ops.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    pair_ops.push_back(t_ops[a] * t_ops[b].transpose());
  }

  auto phi_w = [&](const SparseOp& op) {
    return weighted_state(sp, sd, dyn, st.beta, st.eps, op);
  };

  const double base_tail =
      tail_bound_for(sp, sd, dyn, st.beta, st.eps);
  double max_factor = 1.0;
  for (std::size_t ai = 0; ai < pairs.size(); ++ai) {
    const double fa =
        std::exp(-st.beta * (all[pairs[ai].first].degree().dot(r) -
                             all[pairs[ai].second].degree().dot(r)));
    max_factor = std::max(max_factor, fa);
    for (std::size_t bi = 0; bi < pairs.size(); ++bi) {
      const double ab = phi_w(pair_ops[ai] * pair_ops[bi]).value;
      const double ba = phi_w(pair_ops[bi] * pair_ops[ai]).value;
      rep.kms_residual = std::max(rep.kms_residual, std::abs(ab - fa * ba));
      ++rep.pairs_checked;
    }
  }
  rep.tail_bound = (1.0 + max_factor) * base_tail;

  // Telescoping extension identity, j in {0,1,2}:
  // phi(t_mu t_nu^*) = sum over lambda in s(mu).Lambda^{j*n} of
  // phi(t_{mu lambda} t_{nu lambda}^*), n = join(d(mu),d(nu)) - d(mu).
  for (const auto& [a, b] : pairs) {
    const Path& mu = all[a];
    const Path& nu = all[b];
    const double lhs = evaluate_state(g, st, mu, nu);
    const Degree n = Degree::join(mu.degree(), nu.degree()) - mu.degree();
    for (int j = 0; j <= 2; ++j) {
      double rhs = 0.0;
      for (const Path& lambda : g.paths_of_degree(j * n, mu.source())) {
        rhs += evaluate_state(g, st, g.compose(mu, lambda),
                              g.compose(nu, lambda));
      }
      rep.telescoping_residual =
          std::max(rep.telescoping_residual, std::abs(lhs - rhs));
    }
  }

  // Cauchy-Schwarz comparisons on pairs with r.d(mu) == r.d(nu):
  // |phi(t_mu t_nu^*)| <= phi(t_mu t_mu^*) and the diagonal values agree,
  // both up to the truncation tails.
  for (const auto& [a, b] : pairs) {
    const Path& mu = all[a];
    const Path& nu = all[b];
    if (std::abs(mu.degree().dot(r) - nu.degree().dot(r)) > 1e-12) continue;
    const double v_mn =
        std::abs(phi_w(t_ops[a] * t_ops[b].transpose()).value);
    const double v_mm = phi_w(t_ops[a] * t_ops[a].transpose()).value;
    const double v_nn = phi_w(t_ops[b] * t_ops[b].transpose()).value;
    rep.cs_residual =
        std::max(rep.cs_residual, v_mn - v_mm - 2 * base_tail - 1e-12);
    rep.cs_residual =
        std::max(rep.cs_residual,
                 std::abs(v_mm - v_nn) - 2 * base_tail - 1e-12);
  }
  rep.cs_residual = std::max(rep.cs_residual, 0.0);
  return rep;
}

}  // namespace kgk
