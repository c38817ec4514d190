#include <benchmark/benchmark.h>

#include <random>

#include "kgk/kms.hpp"
#include "kgk/repsim.hpp"
#include "kgk/spectral.hpp"
#include "support/fixtures.hpp"

namespace kt = kgk::testing;
using kgk::Degree;

namespace {

const kgk::KGraph& gamma() {
  static const kgk::KGraph g = kt::gamma();
  return g;
}

const kgk::KGraph& two_vertex() {
  static const kgk::KGraph g = kt::two_vertex();
  return g;
}

void BM_NormalizeLongPath(benchmark::State& state) {
  const kgk::KGraph& g = gamma();
  // worst-case inversion count: all red edges first, then blue
  std::vector<int> seq;
  const int half = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  for (int t = 0; t < half; ++t) seq.push_back(2 + static_cast<int>(rng() % 2));
  for (int t = 0; t < half; ++t) seq.push_back(static_cast<int>(rng() % 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        g.normalize_edges(seq, kgk::KGraph::RewriteStrategy::LeftmostFirst));
  }
}
BENCHMARK(BM_NormalizeLongPath)->Arg(8)->Arg(16)->Arg(32);

void BM_EnumeratePaths(benchmark::State& state) {
  const kgk::KGraph& g = two_vertex();
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.paths_of_degree(Degree({d, d})));
  }
}
BENCHMARK(BM_EnumeratePaths)->Arg(2)->Arg(3)->Arg(4);

void BM_MinimalCommonExtensions(benchmark::State& state) {
  const kgk::KGraph& g = gamma();
  const auto mus = g.paths_of_degree(Degree({2, 0}));
  const auto nus = g.paths_of_degree(Degree({0, 2}));
  for (auto _ : state) {
    for (const kgk::Path& mu : mus) {
      for (const kgk::Path& nu : nus) {
        benchmark::DoNotOptimize(g.minimal_common_extensions(mu, nu));
      }
    }
  }
}
BENCHMARK(BM_MinimalCommonExtensions);

void BM_ResolventProduct(benchmark::State& state) {
  const kgk::KGraph& g = two_vertex();
  const kgk::SpectralData sd = kgk::common_pf_eigenvector(g);
  const Eigen::VectorXd r = sd.rho.array().log();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kgk::resolvent_product(
        g, sd, 2.0, std::span<const double>(r.data(), r.size())));
  }
}
BENCHMARK(BM_ResolventProduct);

void BM_BuildSpace(benchmark::State& state) {
  const kgk::KGraph& g = gamma();
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kgk::build_space(g, Degree({d, d})));
  }
}
BENCHMARK(BM_BuildSpace)->Arg(3)->Arg(4)->Arg(5);

void BM_VerifyRelations(benchmark::State& state) {
  const kgk::TruncatedSpace sp = kgk::build_space(gamma(), Degree({3, 3}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kgk::verify_relations(sp, Degree({1, 1})));
  }
}
BENCHMARK(BM_VerifyRelations);

void BM_VerifyKmsCondition(benchmark::State& state) {
  const kgk::KGraph& g = two_vertex();
  const kgk::SpectralData sd = kgk::common_pf_eigenvector(g);
  const kgk::Dynamics dyn = kgk::Dynamics::preferred_for(sd);
  const Eigen::VectorXd y = kgk::y_vector(g, sd, dyn, 2.0);
  Eigen::VectorXd eps = Eigen::VectorXd::Zero(2);
  eps[0] = 1.0 / y[0];
  const kgk::StateSpec st = kgk::kms_state_from_eps(g, sd, dyn, 2.0, eps);
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kgk::verify_kms_condition(g, st, Degree({d, d})));
  }
}
BENCHMARK(BM_VerifyKmsCondition)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
