#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgk/degree.hpp"
#include "kgk/errors.hpp"

namespace kgk {

// One skeleton edge. Colors are 0-based internally; graph-spec files use
// 1-based colors. source/range index into KGraph::vertices(). A color-i edge
// is a morphism source -> range of degree e_i.
struct Edge {
  std::string id;
  int color = 0;
  int source = 0;
  int range = 0;
};

// e.f == f_prime.e_prime as paths, with color(e) < color(f),
// color(f_prime) == color(f) and color(e_prime) == color(e).
// All members are edge indices.
struct FactorizationSquare {
  int e = 0;
  int f = 0;
  int f_prime = 0;
  int e_prime = 0;
};

// Raw graph description prior to validation, mirroring the graph-spec file:
// colors 1-based, vertices and edges referenced by name.
struct EdgeSpec {
  std::string id;
  int color = 0;  // 1..k
  std::string source;
  std::string range;
};

struct SquareSpec {
  std::string e, f, f_prime, e_prime;  // edge ids
};

struct GraphSpec {
  int k = 0;
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  std::vector<SquareSpec> squares;
};

class KGraph;

// A morphism of the path category, held in normal form: edge colors ascend
// along the sequence. edges()[0] carries the range of the path and
// edges().back() its source; for a vertex path the edge list is empty.
// Two paths of the same graph are equal iff their members compare equal.
class Path {
 public:
  Path() = default;

  const std::vector<int>& edges() const { return edges_; }
  const Degree& degree() const { return degree_; }
  int source() const { return source_; }
  int range() const { return range_; }
  bool is_vertex() const { return edges_.empty(); }

  bool operator==(const Path& other) const {
    return source_ == other.source_ && edges_ == other.edges_;
  }

 private:
  friend class KGraph;
  Path(std::vector<int> edges, Degree degree, int source, int range)
      : edges_(std::move(edges)),
        degree_(std::move(degree)),
        source_(source),
        range_(range) {}

  std::vector<int> edges_;
  Degree degree_;
  int source_ = -1;
  int range_ = -1;
};

struct PathHash {
  std::size_t operator()(const Path& p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(p.source()));
    for (int e : p.edges()) mix(static_cast<std::uint64_t>(e) + 0x9e3779b9ull);
    return static_cast<std::size_t>(h);
  }
};

// Finite k-graph given by its skeleton and factorization squares. Immutable
// after validation; all operations are const and safe to call concurrently.
class KGraph {
 public:
  // Checks every axiom on `spec` and builds the graph. Throws
  // Error(Validation) with codes MalformedSpec, SourceViolation,
  // MissingSquare, DuplicateSquare or CubeInconsistency.
  static KGraph validate(const GraphSpec& spec);

  int rank() const { return rank_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<FactorizationSquare>& squares() const { return squares_; }
  const GraphSpec& spec() const { return spec_; }
  bool cube_checked() const { return rank_ >= 3; }

  int vertex_index(const std::string& name) const;  // throws MalformedSpec
  int edge_index(const std::string& id) const;      // throws MalformedSpec

  // Edges of one color with a given range vertex.
  const std::vector<int>& edges_into(int vertex, int color) const {
    return in_edges_[color][vertex];
  }
  const std::vector<int>& edges_of_color(int color) const {
    return edges_by_color_[color];
  }

  Path vertex_path(int v) const;
  Path edge_path(int e) const;

  // Composes the listed edges (range-to-source order) and normalizes.
  Path make_path(const std::vector<int>& edge_indices) const;
  Path make_path_by_ids(const std::vector<std::string>& edge_ids) const;

  // p then q; requires source(p) == range(q). Throws NotComposable.
  Path compose(const Path& p, const Path& q) const;

  // The factor p(m,n) of p = p(0,m).p(m,n).p(n,d(p)).
  // Requires m <= n <= d(p); throws BadRange.
  Path segment(const Path& p, const Degree& m, const Degree& n) const;

  // All paths of degree n in normal form, optionally filtered by range
  // and/or source vertex, ordered by edge-id sequence (vertex paths by
  // vertex name). Duplicate-free.
  std::vector<Path> paths_of_degree(const Degree& n,
                                    std::optional<int> range_v = {},
                                    std::optional<int> source_w = {}) const;

  // Lambda^min(mu, nu): all pairs (eta, zeta) with mu.eta == nu.zeta of
  // degree join(d(mu), d(nu)).
  std::vector<std::pair<Path, Path>> minimal_common_extensions(
      const Path& mu, const Path& nu) const;

  // Edge ids joined by '.'; the vertex name for a vertex path.
  std::string path_id(const Path& p) const;

  // Rewrites an edge sequence to ascending-color order by applying squares
  // to adjacent out-of-order pairs. Exposed so tests can compare reduction
  // strategies; make_path/compose use LeftmostFirst.
  enum class RewriteStrategy { LeftmostFirst, RightmostFirst };
  std::vector<int> normalize_edges(std::vector<int> seq,
                                   RewriteStrategy strategy) const;

 private:
  KGraph() = default;

  static std::uint64_t pair_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  }

  void check_composable(const std::vector<int>& seq) const;
  Path build_path(std::vector<int> normalized_edges) const;
  // Pops one color-`color` edge off the front of a normalized sequence.
  int extract_front(std::vector<int>& seq, int color) const;

  int rank_ = 0;
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<FactorizationSquare> squares_;
  GraphSpec spec_;

  std::unordered_map<std::string, int> vertex_index_;
  std::unordered_map<std::string, int> edge_index_;
  // (e,f) -> (f', e') for color(e) < color(f), and the reverse reading.
  std::unordered_map<std::uint64_t, std::pair<int, int>> square_fwd_;
  std::unordered_map<std::uint64_t, std::pair<int, int>> square_bwd_;
  std::vector<std::vector<int>> edges_by_color_;
  std::vector<std::vector<std::vector<int>>> in_edges_;  // [color][vertex]
};

}  // namespace kgk
