// kgraph-kms: finite k-graph analysis -- validation, Perron-Frobenius
// spectral data, KMS/ground state construction and verification.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgk/graph_io.hpp"
#include "kgk/kgraph.hpp"
#include "kgk/kms.hpp"
#include "kgk/repsim.hpp"
#include "kgk/spectral.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

// All report floats are rounded to 12 significant digits so identical
// inputs produce byte-identical output.
double round12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

ordered_json jnum(double x) { return round12(x); }

ordered_json jvec(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(jnum(v[i]));
  return a;
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    out.push_back(v);
  }
  return out;
}

kgk::Degree parse_depth(const std::string& text, int rank) {
  std::vector<int> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) entries.push_back(std::stoi(item));
  if (static_cast<int>(entries.size()) == 1 && rank > 1) {
    entries.assign(rank, entries[0]);
  }
  if (static_cast<int>(entries.size()) != rank) {
    throw kgk::Error::precondition(
        "MalformedSpec", "--depth needs " + std::to_string(rank) + " entries");
  }
  return kgk::Degree(entries);
}

struct Options {
  std::string graph_file;
  std::string beta = "";
  std::string r = "preferred";
  std::string eps = "uniform";
  std::string depth = "1";
  std::string format = "text";
  bool rescale = false;
};

struct Session {
  Session(kgk::KGraph g, std::string file)
      : graph(std::move(g)), graph_file(std::move(file)) {}

  kgk::KGraph graph;
  std::string graph_file;
  kgk::Tolerances tol;

  std::optional<kgk::SpectralData> spectral_cache;

  const kgk::SpectralData& spectral() {
    if (!spectral_cache) {
      spectral_cache = kgk::common_pf_eigenvector(graph);
    }
    return *spectral_cache;
  }

  kgk::Dynamics dynamics(const Options& opt) {
    if (opt.r == "preferred") {
      return kgk::Dynamics::preferred_for(spectral());
    }
    const std::vector<double> values = parse_csv_doubles(opt.r);
    if (static_cast<int>(values.size()) != graph.rank()) {
      throw kgk::Error::precondition(
          "MalformedSpec",
          "--r needs " + std::to_string(graph.rank()) + " entries");
    }
    Eigen::VectorXd r(graph.rank());
    for (int i = 0; i < graph.rank(); ++i) r[i] = values[i];
    return kgk::Dynamics::with_r(std::move(r));
  }

  double resolve_beta(const Options& opt, const kgk::Dynamics& dyn) {
    if (opt.beta == "critical") {
      // only defined when the per-color values ln rho_i / r_i agree
      const kgk::SpectralData& sd = spectral();
      double common = std::log(sd.rho[0]) / dyn.r[0];
      for (int i = 1; i < graph.rank(); ++i) {
        const double bc = std::log(sd.rho[i]) / dyn.r[i];
        if (std::abs(bc - common) > tol.critical_band) {
          throw kgk::Error::precondition(
              "SpectralPreconditionViolated",
              "critical beta is defined only when e^r is proportional to "
              "the spectral radii; per-color values disagree");
        }
      }
      return common;
    }
    try {
      return std::stod(opt.beta);
    } catch (const std::exception&) {
      throw kgk::Error::precondition(
          "MalformedSpec", "--beta must be a number, 'critical' or 'inf'");
    }
  }

  Eigen::VectorXd resolve_eps(const Options& opt, const Eigen::VectorXd& y) {
    const int n = graph.vertex_count();
    if (opt.eps == "uniform") {
      return Eigen::VectorXd::Constant(n, 1.0 / y.sum());
    }
    if (opt.eps.rfind("vertex:", 0) == 0) {
      const int v = graph.vertex_index(opt.eps.substr(7));
      Eigen::VectorXd eps = Eigen::VectorXd::Zero(n);
      eps[v] = 1.0 / y[v];
      return eps;
    }
    const std::vector<double> values = parse_csv_doubles(opt.eps);
    if (static_cast<int>(values.size()) != n) {
      throw kgk::Error::precondition(
          "MalformedSpec", "--eps needs " + std::to_string(n) + " entries");
    }
    Eigen::VectorXd eps(n);
    for (int v = 0; v < n; ++v) eps[v] = values[v];
    return eps;
  }

  // probability measure on vertices, for ground states
  Eigen::VectorXd resolve_probability(const Options& opt) {
    const int n = graph.vertex_count();
    if (opt.eps == "uniform") {
      return Eigen::VectorXd::Constant(n, 1.0 / n);
    }
    if (opt.eps.rfind("vertex:", 0) == 0) {
      const int v = graph.vertex_index(opt.eps.substr(7));
      Eigen::VectorXd eps = Eigen::VectorXd::Zero(n);
      eps[v] = 1.0;
      return eps;
    }
    const std::vector<double> values = parse_csv_doubles(opt.eps);
    if (static_cast<int>(values.size()) != n) {
      throw kgk::Error::precondition(
          "MalformedSpec", "--eps needs " + std::to_string(n) + " entries");
    }
    Eigen::VectorXd eps(n);
    for (int v = 0; v < n; ++v) eps[v] = values[v];
    return eps;
  }
};

// beta = "critical" resolves through the preferred dynamics only; an
// explicit --r must match ln rho within the critical band.
void require_preferred_r(Session& s, const Options& opt) {
  if (opt.r == "preferred") return;
  const kgk::Dynamics dyn = s.dynamics(opt);
  const kgk::SpectralData& sd = s.spectral();
  for (int i = 0; i < dyn.r.size(); ++i) {
    if (std::abs(dyn.r[i] - std::log(sd.rho[i])) > s.tol.critical_band) {
      throw kgk::Error::precondition(
          "SpectralPreconditionViolated",
          "beta 'critical' needs the preferred dynamics r = ln rho; "
          "mixed-critical requests are not classified");
    }
  }
}

ordered_json state_report(const kgk::KGraph& g, const kgk::StateSpec& st,
                          double kms_residual) {
  ordered_json j;
  j["beta"] = st.beta_is_infinite ? ordered_json("inf") : jnum(st.beta);
  j["r"] = jvec(st.r);
  j["eps"] = jvec(st.eps);
  j["m"] = jvec(st.m);
  j["kind"] = kgk::to_string(st.kind);
  ordered_json res;
  res["kms"] = jnum(kms_residual);
  res["subinvariance"] = jnum(st.subinvariance_min);
  res["pf"] = jnum(st.ck_residual);
  j["residuals"] = std::move(res);
  ordered_json ind;
  if (st.independence) {
    ind["status"] = kgk::to_string(st.independence->status);
    if (st.independence->status == kgk::IndependenceStatus::Dependent) {
      ind["witness"] = {{"p", st.independence->p},
                        {"q", st.independence->q},
                        {"i", st.independence->i + 1},
                        {"j", st.independence->j + 1}};
    } else {
      ind["witness"] = nullptr;
    }
    ind["best_residual"] = jnum(st.independence->best_residual);
    j["uniqueness_claimed"] = st.uniqueness_claimed;
  } else {
    ind["status"] = "n/a";
    ind["witness"] = nullptr;
  }
  j["independence"] = std::move(ind);
  (void)g;
  return j;
}

ordered_json spectra_report(Session& s) {
  const kgk::SpectralData& sd = s.spectral();
  ordered_json j;
  j["matrices"] = ordered_json::array();
  for (int c = 0; c < s.graph.rank(); ++c) {
    const kgk::VertexMatrix vm = kgk::vertex_matrix(s.graph, c);
    ordered_json entries = ordered_json::array();
    for (int v = 0; v < vm.entries.size(); ++v) {
      ordered_json row = ordered_json::array();
      for (int w = 0; w < vm.entries.size(); ++w) {
        row.push_back(static_cast<long long>(vm.entries.at(v, w)));
      }
      entries.push_back(std::move(row));
    }
    ordered_json m;
    m["color"] = c + 1;
    m["entries"] = std::move(entries);
    m["irreducible"] = static_cast<bool>(sd.irreducible[c]);
    m["rho"] = jnum(sd.rho[c]);
    m["residual"] = jnum(sd.residual[c]);
    j["matrices"].push_back(std::move(m));
  }
  j["commuting"] = kgk::check_commuting(s.graph);
  j["x"] = jvec(sd.x);
  std::vector<double> logs(s.graph.rank());
  for (int c = 0; c < s.graph.rank(); ++c) logs[c] = std::log(sd.rho[c]);
  const kgk::IndependenceReport ind = kgk::rational_independence(logs, 1000000);
  j["independence"] = {{"status", kgk::to_string(ind.status)},
                       {"best_residual", jnum(ind.best_residual)}};
  if (ind.status == kgk::IndependenceStatus::Dependent) {
    j["independence"]["witness"] = {
        {"p", ind.p}, {"q", ind.q}, {"i", ind.i + 1}, {"j", ind.j + 1}};
  }
  return j;
}

void flatten_csv(const ordered_json& j, const std::string& prefix,
                 std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten_csv(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (j.is_array()) {
    int idx = 0;
    for (const auto& value : j) {
      flatten_csv(value, prefix + "[" + std::to_string(idx++) + "]", out);
    }
  } else {
    out << prefix << "," << j.dump() << "\n";
  }
}

void emit(const Options& opt, const ordered_json& envelope,
          const std::string& text_summary) {
  if (opt.format == "json") {
    std::cout << envelope.dump(2) << "\n";
  } else if (opt.format == "csv") {
    flatten_csv(envelope, "", std::cout);
  } else {
    std::cout << text_summary << "\n";
  }
}

ordered_json make_envelope(Session& s, const std::string& subcommand,
                           ordered_json params, ordered_json result) {
  ordered_json env;
  env["tool"] = "kgraph-kms";
  env["subcommand"] = subcommand;
  env["graph"] = s.graph_file;
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(kgk::graph_hash(s.graph)));
  env["graph_hash"] = hash;
  env["tolerance"] = {{"structural", jnum(s.tol.structural)},
                      {"convergence", jnum(s.tol.convergence)},
                      {"critical_band", jnum(s.tol.critical_band)}};
  env["params"] = std::move(params);
  env["result"] = std::move(result);
  return env;
}

int run_subcommand(const std::string& name, const Options& opt) {
  Session s(kgk::KGraph::validate(kgk::load_graph_spec(opt.graph_file)),
            opt.graph_file);
  if (const char* env = std::getenv("KGK_TOL")) {
    s.tol.structural = std::strtod(env, nullptr);
  }
  const kgk::KGraph& g = s.graph;
  ordered_json params;
  params["beta"] = opt.beta.empty() ? "n/a" : opt.beta;
  params["r"] = opt.r;
  params["eps"] = opt.eps;
  params["depth"] = opt.depth;

  if (name == "validate") {
    ordered_json result;
    result["k"] = g.rank();
    result["vertices"] = g.vertex_count();
    result["edges"] = static_cast<int>(g.edges().size());
    result["squares"] = static_cast<int>(g.squares().size());
    result["cube"] = g.cube_checked() ? "ok" : "n/a";
    std::ostringstream text;
    text << "k=" << g.rank() << ", " << g.vertex_count()
         << (g.vertex_count() == 1 ? " vertex, " : " vertices, ")
         << g.edges().size() << " edges, " << g.squares().size()
         << " squares, cube: " << (g.cube_checked() ? "ok" : "n/a");
    emit(opt, make_envelope(s, name, params, result), text.str());
    return 0;
  }

  if (name == "spectra") {
    ordered_json result = spectra_report(s);
    if (opt.format == "csv") {
      // matrix blocks: one header per color, then integer rows
      for (int c = 0; c < g.rank(); ++c) {
        const kgk::VertexMatrix vm = kgk::vertex_matrix(g, c);
        std::cout << "A_" << (c + 1) << "\n";
        for (int v = 0; v < vm.entries.size(); ++v) {
          for (int w = 0; w < vm.entries.size(); ++w) {
            std::cout << (w ? "," : "") << vm.entries.at(v, w);
          }
          std::cout << "\n";
        }
      }
      const kgk::SpectralData& sd = s.spectral();
      std::cout << "rho";
      for (int c = 0; c < g.rank(); ++c) std::cout << "," << fmt12(sd.rho[c]);
      std::cout << "\nx";
      for (int v = 0; v < g.vertex_count(); ++v) {
        std::cout << "," << fmt12(sd.x[v]);
      }
      std::cout << "\nindependence,"
                << result["independence"]["status"].get<std::string>() << "\n";
      return 0;
    }
    std::ostringstream text;
    const kgk::SpectralData& sd = s.spectral();
    text << "rho = (";
    for (int c = 0; c < g.rank(); ++c) {
      text << (c ? ", " : "") << fmt12(sd.rho[c]);
    }
    text << "), x = (";
    for (int v = 0; v < g.vertex_count(); ++v) {
      text << (v ? ", " : "") << fmt12(sd.x[v]);
    }
    text << "), independence: " << result["independence"]["status"].get<std::string>();
    emit(opt, make_envelope(s, name, params, result), text.str());
    return 0;
  }

  if (name == "kms") {
    const kgk::Dynamics dyn = s.dynamics(opt);
    if (opt.beta == "inf") {
      const kgk::StateSpec st =
          kgk::ground_state(g, dyn, s.resolve_probability(opt), s.tol);
      const kgk::GroundCheckReport chk =
          kgk::ground_condition_check(g, st, parse_depth(opt.depth, g.rank()));
      ordered_json result = state_report(g, st, 0.0);
      result["ground_check"] = {{"passed", chk.passed},
                                {"surviving_pairs", chk.surviving_pairs},
                                {"max_violation", jnum(chk.max_violation)}};
      emit(opt, make_envelope(s, name, params, result),
           std::string("KMS-infinity state; ground check ") +
               (chk.passed ? "passed" : "FAILED"));
      return 0;
    }
    if (opt.beta == "critical") {
      require_preferred_r(s, opt);
      const kgk::StateSpec st = kgk::kms1_state(g, s.spectral(), 1000000, s.tol);
      const double res =
          kgk::verify_kms_condition(g, st, parse_depth(opt.depth, g.rank()));
      emit(opt, make_envelope(s, name, params, state_report(g, st, res)),
           "KMS_1 state at the critical inverse temperature; residual " +
               fmt12(res));
      return 0;
    }
    const double beta = s.resolve_beta(opt, dyn);
    const Eigen::VectorXd y = kgk::y_vector(g, s.spectral(), dyn, beta);
    const kgk::StateSpec st = kgk::kms_state_from_eps(
        g, s.spectral(), dyn, beta, s.resolve_eps(opt, y), opt.rescale, s.tol);
    const double res =
        kgk::verify_kms_condition(g, st, parse_depth(opt.depth, g.rank()));
    ordered_json result = state_report(g, st, res);
    result["y"] = jvec(y);
    std::ostringstream text;
    text << "KMS_" << fmt12(beta) << " state (" << kgk::to_string(st.kind)
         << "); kms residual " << fmt12(res);
    emit(opt, make_envelope(s, name, params, result), text.str());
    return 0;
  }

  if (name == "simplex") {
    const kgk::Dynamics dyn = s.dynamics(opt);
    const double beta = s.resolve_beta(opt, dyn);
    const kgk::SimplexSummary sum =
        kgk::simplex_summary(g, s.spectral(), dyn, beta, s.tol);
    ordered_json result;
    result["beta"] = jnum(sum.beta);
    result["dimension"] = sum.dimension;
    result["y"] = jvec(sum.y);
    result["extreme_points"] = ordered_json::array();
    for (const kgk::ExtremePoint& pt : sum.points) {
      result["extreme_points"].push_back(
          {{"vertex", g.vertices()[pt.vertex]},
           {"eps", jvec(pt.eps)},
           {"m", jvec(pt.m)},
           {"factors_through_ck", pt.factors_through_ck},
           {"ck_residual", jnum(pt.ck_residual)}});
    }
    std::ostringstream text;
    text << sum.points.size() << " extreme points, dimension "
         << sum.dimension;
    emit(opt, make_envelope(s, name, params, result), text.str());
    return 0;
  }

  if (name == "critical") {
    const kgk::StateSpec st = kgk::kms1_state(g, s.spectral(), 1000000, s.tol);
    ordered_json result = state_report(g, st, 0.0);
    result["beta_c"] = jnum(1.0);
    std::ostringstream text;
    text << "beta_c = 1, independence: "
         << kgk::to_string(st.independence->status) << ", "
         << (st.uniqueness_claimed ? "unique KMS_1 state"
                                   : "KMS_1 state (existence only)");
    emit(opt, make_envelope(s, name, params, result), text.str());
    return 0;
  }

  if (name == "ground") {
    const kgk::Dynamics dyn = s.dynamics(opt);
    const Eigen::VectorXd eps = s.resolve_probability(opt);
    const kgk::StateSpec st = kgk::ground_state(g, dyn, eps, s.tol);
    const kgk::GroundCheckReport chk =
        kgk::ground_condition_check(g, st, parse_depth(opt.depth, g.rank()));
    ordered_json result = state_report(g, st, 0.0);
    result["ground_check"] = {
        {"passed", chk.passed},
        {"surviving_pairs", chk.surviving_pairs},
        {"max_violation", jnum(chk.max_violation)},
        {"modulus_nonincreasing", chk.modulus_nonincreasing}};
    const std::vector<double> betas = {10.0, 20.0, 40.0};
    ordered_json limit = ordered_json::array();
    try {
      const kgk::GroundLimitReport lim =
          kgk::ground_limit_check(g, s.spectral(), dyn, eps, betas);
      for (std::size_t t = 0; t < lim.betas.size(); ++t) {
        limit.push_back({{"beta", jnum(lim.betas[t])},
                         {"linf_error", jnum(lim.linf_error[t])}});
      }
      result["limit_check"] = std::move(limit);
    } catch (const kgk::Error& err) {
      result["limit_check"] = std::string("skipped: ") + err.what();
    }
    emit(opt, make_envelope(s, name, params, result),
         std::string("ground state; check ") +
             (chk.passed ? "passed" : "FAILED"));
    return 0;
  }

  if (name == "verify") {
    const kgk::Degree depth = parse_depth(opt.depth, g.rank());
    const kgk::TruncatedSpace sp = kgk::build_space(g, 3 * depth);
    const kgk::RelationReport rel = kgk::verify_relations(sp, depth);
    ordered_json result;
    ordered_json relations;
    for (const auto& [key, value] : rel.max_dev) relations[key] = value;
    result["relations"] = std::move(relations);
    result["interior_size"] = rel.interior_size;
    result["ck_fails_strictly"] = rel.ck_fails_strictly;
    long long incl_max = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
      for (unsigned mask = 1; mask < (1u << g.rank()); ++mask) {
        std::vector<int> colors;
        for (int c = 0; c < g.rank(); ++c) {
          if (mask & (1u << c)) colors.push_back(c);
        }
        const kgk::InclusionExclusionReport ie =
            kgk::inclusion_exclusion_check(sp, v, colors);
        incl_max = std::max(incl_max, ie.max_dev);
      }
    }
    result["inclusion_exclusion_max_dev"] = incl_max;
    double kms_res = -1.0;
    double tail = 0.0;
    if (!opt.beta.empty() && opt.beta != "inf" && opt.beta != "critical") {
      const kgk::Dynamics dyn = s.dynamics(opt);
      const double beta = s.resolve_beta(opt, dyn);
      const Eigen::VectorXd y = kgk::y_vector(g, s.spectral(), dyn, beta);
      const kgk::StateSpec st = kgk::kms_state_from_eps(
          g, s.spectral(), dyn, beta, s.resolve_eps(opt, y), opt.rescale,
          s.tol);
      const kgk::OperatorKmsReport rep =
          kgk::kms_residual_operator_level(sp, st, s.spectral(), depth);
      kms_res = rep.kms_residual;
      tail = rep.tail_bound;
      result["kms_residual"] = jnum(rep.kms_residual);
      result["tail_bound"] = jnum(rep.tail_bound);
      result["telescoping_residual"] = jnum(rep.telescoping_residual);
      result["cs_residual"] = jnum(rep.cs_residual);
    }
    std::ostringstream text;
    long long worst = 0;
    for (const auto& [key, value] : rel.max_dev) {
      worst = std::max(worst, value);
    }
    text << "relations max deviation " << worst << ", inclusion-exclusion "
         << incl_max;
    if (kms_res >= 0) {
      text << ", kms residual " << fmt12(kms_res) << " (tail bound "
           << fmt12(tail) << ")";
    }
    emit(opt, make_envelope(s, name, params, result), text.str());
    return 0;
  }

  if (name == "report") {
    ordered_json result;
    result["validate"] = {{"k", g.rank()},
                          {"vertices", g.vertex_count()},
                          {"edges", static_cast<int>(g.edges().size())},
                          {"squares", static_cast<int>(g.squares().size())},
                          {"cube", g.cube_checked() ? "ok" : "n/a"}};
    result["spectra"] = spectra_report(s);
    try {
      const kgk::StateSpec st = kgk::kms1_state(g, s.spectral(), 1000000, s.tol);
      result["critical"] = state_report(g, st, 0.0);
    } catch (const kgk::Error& err) {
      result["critical"] = std::string("skipped: ") + err.what();
    }
    if (!opt.beta.empty() && opt.beta != "inf" && opt.beta != "critical") {
      const kgk::Dynamics dyn = s.dynamics(opt);
      const double beta = s.resolve_beta(opt, dyn);
      const Eigen::VectorXd y = kgk::y_vector(g, s.spectral(), dyn, beta);
      const kgk::StateSpec st = kgk::kms_state_from_eps(
          g, s.spectral(), dyn, beta, s.resolve_eps(opt, y), opt.rescale,
          s.tol);
      const double res =
          kgk::verify_kms_condition(g, st, parse_depth(opt.depth, g.rank()));
      result["kms"] = state_report(g, st, res);
      const kgk::SimplexSummary sum =
          kgk::simplex_summary(g, s.spectral(), dyn, beta, s.tol);
      result["simplex"] = {{"dimension", sum.dimension},
                           {"points", static_cast<int>(sum.points.size())}};
    }
    const kgk::Degree depth = parse_depth(opt.depth, g.rank());
    const kgk::TruncatedSpace sp = kgk::build_space(g, 3 * depth);
    const kgk::RelationReport rel = kgk::verify_relations(sp, depth);
    ordered_json relations;
    for (const auto& [key, value] : rel.max_dev) relations[key] = value;
    result["relations"] = std::move(relations);
    emit(opt, make_envelope(s, name, params, result), "report complete");
    return 0;
  }

  throw kgk::Error::precondition("MalformedSpec",
                                 "unknown subcommand " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite k-graph spectral data and KMS states"};
  app.require_subcommand(1);

  Options opt;
  const std::vector<std::string> names = {
      "validate", "spectra", "kms",    "simplex",
      "critical", "ground",  "verify", "report"};
  const std::vector<std::string> descriptions = {
      "check the k-graph axioms on a graph-spec file",
      "vertex matrices, spectral radii and the common PF eigenvector",
      "construct and verify a KMS_beta state",
      "extreme points of the KMS_beta simplex",
      "critical inverse temperature and the KMS_1 state",
      "KMS-infinity states and the large-beta limit",
      "operator relations and the KMS residual on the path representation",
      "all of the above"};
  std::vector<CLI::App*> subs;
  for (std::size_t t = 0; t < names.size(); ++t) {
    CLI::App* sub = app.add_subcommand(names[t], descriptions[t]);
    sub->add_option("graph", opt.graph_file, "graph-spec JSON file")
        ->required();
    sub->add_option("--beta", opt.beta, "inverse temperature, 'critical' or 'inf'");
    sub->add_option("--r", opt.r, "'preferred' or comma-separated values");
    sub->add_option("--eps", opt.eps,
                    "'uniform', 'vertex:<id>' or comma-separated values");
    sub->add_option("--depth", opt.depth, "degree bound for verification");
    sub->add_option("--format", opt.format, "json|csv|text");
    sub->add_flag("--rescale", opt.rescale, "rescale eps to eps.y == 1");
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (std::size_t t = 0; t < names.size(); ++t) {
      if (subs[t]->parsed()) return run_subcommand(names[t], opt);
    }
  } catch (const kgk::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return static_cast<int>(err.kind());
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}
