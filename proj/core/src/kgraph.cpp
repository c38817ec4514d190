#include "kgk/kgraph.hpp"

#include <algorithm>
#include <cassert>

namespace kgk {

namespace {

std::string edge_desc(const Edge& e) { return "edge '" + e.id + "'"; }

}  // namespace

KGraph KGraph::validate(const GraphSpec& spec) {
  KGraph g;
  g.spec_ = spec;
  g.rank_ = spec.k;
  if (spec.k < 1) {
    throw Error::validation("MalformedSpec", "k must be at least 1");
  }
  if (spec.vertices.empty()) {
    throw Error::validation("MalformedSpec", "at least one vertex required");
  }
  for (const std::string& v : spec.vertices) {
    if (v.empty()) {
      throw Error::validation("MalformedSpec", "empty vertex name");
    }
    if (!g.vertex_index_.emplace(v, g.vertices_.size()).second) {
      throw Error::validation("MalformedSpec", "duplicate vertex '" + v + "'");
    }
    g.vertices_.push_back(v);
  }

  for (const EdgeSpec& es : spec.edges) {
    if (es.id.empty()) {
      throw Error::validation("MalformedSpec", "empty edge id");
    }
    if (es.color < 1 || es.color > spec.k) {
      throw Error::validation("MalformedSpec", "edge '" + es.id +
                                                   "' has color out of 1.." +
                                                   std::to_string(spec.k));
    }
    auto src = g.vertex_index_.find(es.source);
    auto rng = g.vertex_index_.find(es.range);
    if (src == g.vertex_index_.end() || rng == g.vertex_index_.end()) {
      throw Error::validation(
          "MalformedSpec", "edge '" + es.id + "' references unknown vertex");
    }
    if (!g.edge_index_.emplace(es.id, g.edges_.size()).second) {
      throw Error::validation("MalformedSpec",
                              "duplicate edge id '" + es.id + "'");
    }
    g.edges_.push_back(Edge{es.id, es.color - 1, src->second, rng->second});
  }

  g.edges_by_color_.assign(g.rank_, {});
  g.in_edges_.assign(g.rank_, std::vector<std::vector<int>>(
                                  g.vertices_.size(), std::vector<int>{}));
  for (int e = 0; e < static_cast<int>(g.edges_.size()); ++e) {
    g.edges_by_color_[g.edges_[e].color].push_back(e);
    g.in_edges_[g.edges_[e].color][g.edges_[e].range].push_back(e);
  }

  // No sources: every vertex receives an edge of every color.
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (int c = 0; c < g.rank_; ++c) {
      if (g.in_edges_[c][v].empty()) {
        throw Error::validation(
            "SourceViolation", "vertex '" + g.vertices_[v] +
                                   "' has no incoming edge of color " +
                                   std::to_string(c + 1));
      }
    }
  }

  // Squares: endpoint and color constraints, then bijectivity in both
  // reading directions.
  for (const SquareSpec& sq : spec.squares) {
    FactorizationSquare s;
    try {
      s.e = g.edge_index(sq.e);
      s.f = g.edge_index(sq.f);
      s.f_prime = g.edge_index(sq.f_prime);
      s.e_prime = g.edge_index(sq.e_prime);
    } catch (const Error&) {
      throw Error::validation("MalformedSpec",
                              "square references unknown edge id");
    }
    const Edge& e = g.edges_[s.e];
    const Edge& f = g.edges_[s.f];
    const Edge& fp = g.edges_[s.f_prime];
    const Edge& ep = g.edges_[s.e_prime];
    if (!(e.color < f.color) || fp.color != f.color || ep.color != e.color) {
      throw Error::validation(
          "MalformedSpec", "square [" + e.id + "," + f.id + "," + fp.id + "," +
                               ep.id + "] violates the color pattern");
    }
    if (e.source != f.range || fp.range != e.range ||
        fp.source != ep.range || ep.source != f.source) {
      throw Error::validation(
          "MalformedSpec", "square [" + e.id + "," + f.id + "," + fp.id + "," +
                               ep.id + "] is not composable");
    }
    if (!g.square_fwd_.emplace(pair_key(s.e, s.f), std::make_pair(s.f_prime, s.e_prime))
             .second) {
      throw Error::validation("DuplicateSquare",
                              "pair (" + e.id + "," + f.id +
                                  ") appears in more than one square");
    }
    if (!g.square_bwd_
             .emplace(pair_key(s.f_prime, s.e_prime), std::make_pair(s.e, s.f))
             .second) {
      throw Error::validation("DuplicateSquare",
                              "pair (" + fp.id + "," + ep.id +
                                  ") appears in more than one square");
    }
    g.squares_.push_back(s);
  }

  // Coverage: every composable bicolor pair must appear, in both readings.
  for (int a = 0; a < static_cast<int>(g.edges_.size()); ++a) {
    for (int b = 0; b < static_cast<int>(g.edges_.size()); ++b) {
      const Edge& ea = g.edges_[a];
      const Edge& eb = g.edges_[b];
      if (ea.color == eb.color || ea.source != eb.range) continue;
      if (ea.color < eb.color) {
        if (!g.square_fwd_.count(pair_key(a, b))) {
          throw Error::validation("MissingSquare",
                                  "no square factorizes " + edge_desc(ea) +
                                      " . " + edge_desc(eb));
        }
      } else {
        if (!g.square_bwd_.count(pair_key(a, b))) {
          throw Error::validation("MissingSquare",
                                  "no square has right side " + edge_desc(ea) +
                                      " . " + edge_desc(eb));
        }
      }
    }
  }

  // Cube condition for k >= 3: on every composable triple with strictly
  // descending colors, the two reduction strategies must agree.
  if (g.rank_ >= 3) {
    for (int a = 0; a < static_cast<int>(g.edges_.size()); ++a) {
      for (int b = 0; b < static_cast<int>(g.edges_.size()); ++b) {
        const Edge& ea = g.edges_[a];
        const Edge& eb = g.edges_[b];
        if (ea.color <= eb.color || ea.source != eb.range) continue;
        for (int c = 0; c < static_cast<int>(g.edges_.size()); ++c) {
          const Edge& ec = g.edges_[c];
          if (eb.color <= ec.color || eb.source != ec.range) continue;
          std::vector<int> left =
              g.normalize_edges({a, b, c}, RewriteStrategy::LeftmostFirst);
          std::vector<int> right =
              g.normalize_edges({a, b, c}, RewriteStrategy::RightmostFirst);
          if (left != right) {
            throw Error::validation(
                "CubeInconsistency",
                "triple " + ea.id + "." + eb.id + "." + ec.id +
                    " normalizes to two different paths");
          }
        }
      }
    }
  }

  return g;
}

int KGraph::vertex_index(const std::string& name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end()) {
    throw Error::validation("MalformedSpec", "unknown vertex '" + name + "'");
  }
  return it->second;
}

int KGraph::edge_index(const std::string& id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) {
    throw Error::validation("MalformedSpec", "unknown edge '" + id + "'");
  }
  return it->second;
}

std::vector<int> KGraph::normalize_edges(std::vector<int> seq,
                                         RewriteStrategy strategy) const {
  // Bubble procedure: each swap replaces an adjacent descending pair
  // (f', e') by the square's left side (e, f), lowering the inversion count
  // by exactly one.
  while (true) {
    int pos = -1;
    const int last = static_cast<int>(seq.size()) - 1;
    if (strategy == RewriteStrategy::LeftmostFirst) {
      for (int t = 0; t < last; ++t) {
        if (edges_[seq[t]].color > edges_[seq[t + 1]].color) {
          pos = t;
          break;
        }
      }
    } else {
      for (int t = last - 1; t >= 0; --t) {
        if (edges_[seq[t]].color > edges_[seq[t + 1]].color) {
          pos = t;
          break;
        }
      }
    }
    if (pos < 0) break;
    auto it = square_bwd_.find(pair_key(seq[pos], seq[pos + 1]));
    if (it == square_bwd_.end()) {
      throw Error::invariant("InvariantBreach",
                             "validated graph is missing a square");
    }
    seq[pos] = it->second.first;
    seq[pos + 1] = it->second.second;
  }
  return seq;
}

void KGraph::check_composable(const std::vector<int>& seq) const {
  for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
    if (edges_[seq[t]].source != edges_[seq[t + 1]].range) {
      throw Error::precondition(
          "NotComposable", "edges " + edges_[seq[t]].id + " and " +
                               edges_[seq[t + 1]].id + " do not compose");
    }
  }
}

Path KGraph::build_path(std::vector<int> normalized_edges) const {
  assert(!normalized_edges.empty());
  std::vector<int> counts(rank_, 0);
  for (int e : normalized_edges) ++counts[edges_[e].color];
  const int range = edges_[normalized_edges.front()].range;
  const int source = edges_[normalized_edges.back()].source;
  return Path(std::move(normalized_edges), Degree(std::move(counts)), source,
              range);
}

Path KGraph::vertex_path(int v) const {
  return Path({}, Degree::zero(rank_), v, v);
}

Path KGraph::edge_path(int e) const { return make_path({e}); }

Path KGraph::make_path(const std::vector<int>& edge_indices) const {
  if (edge_indices.empty()) {
    throw Error::precondition("NotComposable",
                              "empty edge list; use vertex_path");
  }
  check_composable(edge_indices);
  return build_path(
      normalize_edges(edge_indices, RewriteStrategy::LeftmostFirst));
}

Path KGraph::make_path_by_ids(const std::vector<std::string>& edge_ids) const {
  std::vector<int> idx;
  idx.reserve(edge_ids.size());
  for (const std::string& id : edge_ids) idx.push_back(edge_index(id));
  return make_path(idx);
}

Path KGraph::compose(const Path& p, const Path& q) const {
  if (p.source() != q.range()) {
    throw Error::precondition("NotComposable",
                              "source of left path differs from range of "
                              "right path");
  }
  if (p.is_vertex()) return q;
  if (q.is_vertex()) return p;
  std::vector<int> seq = p.edges();
  seq.insert(seq.end(), q.edges().begin(), q.edges().end());
  return build_path(normalize_edges(std::move(seq),
                                    RewriteStrategy::LeftmostFirst));
}

int KGraph::extract_front(std::vector<int>& seq, int color) const {
  int pos = -1;
  for (std::size_t t = 0; t < seq.size(); ++t) {
    if (edges_[seq[t]].color == color) {
      pos = static_cast<int>(t);
      break;
    }
  }
  assert(pos >= 0);
  // Move the edge to the front; each forward square swap keeps the lower
  // colors in front sorted.
  while (pos > 0) {
    auto it = square_fwd_.find(pair_key(seq[pos - 1], seq[pos]));
    if (it == square_fwd_.end()) {
      throw Error::invariant("InvariantBreach",
                             "validated graph is missing a square");
    }
    seq[pos - 1] = it->second.first;
    seq[pos] = it->second.second;
    --pos;
  }
  const int front = seq.front();
  seq.erase(seq.begin());
  return front;
}

Path KGraph::segment(const Path& p, const Degree& m, const Degree& n) const {
  if (!m.leq(n) || !n.leq(p.degree())) {
    throw Error::precondition(
        "BadRange", "need m <= n <= d(p); got m=" + m.to_string() +
                        ", n=" + n.to_string() + ", d(p)=" +
                        p.degree().to_string());
  }
  std::vector<int> cur = p.edges();
  auto take = [&](const Degree& want) -> std::vector<int> {
    std::vector<int> head;
    for (int c = 0; c < rank_; ++c) {
      for (int t = 0; t < want[c]; ++t) head.push_back(extract_front(cur, c));
    }
    return head;
  };
  take(m);  // drop p(0,m)
  const Degree mid = n - m;
  std::vector<int> seg = take(mid);
  if (seg.empty()) {
    const int v = cur.empty() ? p.source() : edges_[cur.front()].range;
    return vertex_path(v);
  }
  return build_path(std::move(seg));
}

std::vector<Path> KGraph::paths_of_degree(const Degree& n,
                                          std::optional<int> range_v,
                                          std::optional<int> source_w) const {
  std::vector<Path> out;
  if (n.is_zero()) {
    for (int v = 0; v < vertex_count(); ++v) {
      if (range_v && *range_v != v) continue;
      if (source_w && *source_w != v) continue;
      out.push_back(vertex_path(v));
    }
    std::sort(out.begin(), out.end(), [this](const Path& a, const Path& b) {
      return vertices_[a.source()] < vertices_[b.source()];
    });
    return out;
  }

  // Color-sorted composable edge sequences are exactly the normal forms.
  std::vector<int> colors;
  for (int c = 0; c < rank_; ++c) {
    colors.insert(colors.end(), n[c], c);
  }
  const int len = static_cast<int>(colors.size());
  std::vector<int> seq(len);
  auto dfs = [&](auto&& self, int pos) -> void {
    if (pos == len) {
      out.push_back(build_path(seq));
      return;
    }
    const int c = colors[pos];
    for (int e : edges_by_color_[c]) {
      if (pos == 0) {
        if (range_v && edges_[e].range != *range_v) continue;
      } else if (edges_[e].range != edges_[seq[pos - 1]].source) {
        continue;
      }
      if (pos == len - 1 && source_w && edges_[e].source != *source_w) {
        continue;
      }
      seq[pos] = e;
      self(self, pos + 1);
    }
  };
  dfs(dfs, 0);
  std::sort(out.begin(), out.end(), [this](const Path& a, const Path& b) {
    const auto& ea = a.edges();
    const auto& eb = b.edges();
    for (std::size_t t = 0; t < ea.size(); ++t) {
      if (edges_[ea[t]].id != edges_[eb[t]].id) {
        return edges_[ea[t]].id < edges_[eb[t]].id;
      }
    }
    return false;
  });
  return out;
}

std::vector<std::pair<Path, Path>> KGraph::minimal_common_extensions(
    const Path& mu, const Path& nu) const {
  std::vector<std::pair<Path, Path>> out;
  if (mu.range() != nu.range()) return out;
  const Degree target = Degree::join(mu.degree(), nu.degree());
  const std::vector<Path> etas =
      paths_of_degree(target - mu.degree(), mu.source());
  const std::vector<Path> zetas =
      paths_of_degree(target - nu.degree(), nu.source());
  std::vector<Path> nu_ext;
  nu_ext.reserve(zetas.size());
  for (const Path& z : zetas) nu_ext.push_back(compose(nu, z));
  for (const Path& eta : etas) {
    const Path lhs = compose(mu, eta);
    for (std::size_t t = 0; t < zetas.size(); ++t) {
      if (lhs == nu_ext[t]) out.emplace_back(eta, zetas[t]);
    }
  }
  return out;
}

std::string KGraph::path_id(const Path& p) const {
  if (p.is_vertex()) return vertices_[p.source()];
  std::string s;
  for (std::size_t t = 0; t < p.edges().size(); ++t) {
    if (t > 0) s += ".";
    s += edges_[p.edges()[t]].id;
  }
  return s;
}

}  // namespace kgk
