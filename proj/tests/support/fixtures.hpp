#pragma once

#include <string>
#include <vector>

#include "kgk/kgraph.hpp"

namespace kgk::testing {

// One vertex, two blue edges e,f and two red edges a,b with
// ea=ae, eb=af, fa=be, fb=bf. Vertex matrices (2) and (2).
inline GraphSpec gamma_spec() {
  GraphSpec s;
  s.k = 2;
  s.vertices = {"v"};
  s.edges = {{"e", 1, "v", "v"},
             {"f", 1, "v", "v"},
             {"a", 2, "v", "v"},
             {"b", 2, "v", "v"}};
  s.squares = {{"e", "a", "a", "e"},
               {"e", "b", "a", "f"},
               {"f", "a", "b", "e"},
               {"f", "b", "b", "f"}};
  return s;
}

inline KGraph gamma() { return KGraph::validate(gamma_spec()); }

// One vertex, m blue loops and n red loops, squares e_i f_j = f_j e_i.
inline GraphSpec single_vertex_spec(int m, int n) {
  GraphSpec s;
  s.k = 2;
  s.vertices = {"v"};
  for (int i = 1; i <= m; ++i) {
    s.edges.push_back({"e" + std::to_string(i), 1, "v", "v"});
  }
  for (int j = 1; j <= n; ++j) {
    s.edges.push_back({"f" + std::to_string(j), 2, "v", "v"});
  }
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= n; ++j) {
      const std::string e = "e" + std::to_string(i);
      const std::string f = "f" + std::to_string(j);
      s.squares.push_back({e, f, f, e});
    }
  }
  return s;
}

inline KGraph single_vertex(int m, int n) {
  return KGraph::validate(single_vertex_spec(m, n));
}

// Two vertices u,v; one blue and one red edge for every (range, source)
// pair; squares b_{VW} r_{WX} = r_{VW} b_{WX}. Both vertex matrices are
// [[1,1],[1,1]], so rho = (2,2) and x = (1/2,1/2).
inline GraphSpec two_vertex_spec() {
  GraphSpec s;
  s.k = 2;
  s.vertices = {"u", "v"};
  for (const char* V : {"u", "v"}) {
    for (const char* W : {"u", "v"}) {
      s.edges.push_back(
          {std::string("b") + V + W, 1, W, V});
    }
  }
  for (const char* V : {"u", "v"}) {
    for (const char* W : {"u", "v"}) {
      s.edges.push_back(
          {std::string("r") + V + W, 2, W, V});
    }
  }
  for (const char* V : {"u", "v"}) {
    for (const char* W : {"u", "v"}) {
      for (const char* X : {"u", "v"}) {
        s.squares.push_back({std::string("b") + V + W, std::string("r") + W + X,
                             std::string("r") + V + W,
                             std::string("b") + W + X});
      }
    }
  }
  return s;
}

inline KGraph two_vertex() { return KGraph::validate(two_vertex_spec()); }

// Rank-3 single-vertex graph: loops a1,a2 (color 1), b1,b2 (color 2),
// c (color 3). The (1,2) squares use the permutation pi_j on {a1,a2}
// (pi encoded as: pi[j-1] true means swap); the (i,3) squares always swap.
// pi = (id, id) gives a consistent 3-graph; pi = (id, swap) breaks the
// cube condition.
inline GraphSpec rank3_spec(bool break_cube) {
  GraphSpec s;
  s.k = 3;
  s.vertices = {"v"};
  s.edges = {{"a1", 1, "v", "v"}, {"a2", 1, "v", "v"},
             {"b1", 2, "v", "v"}, {"b2", 2, "v", "v"},
             {"c", 3, "v", "v"}};
  auto a = [](int i) { return "a" + std::to_string(i); };
  auto b = [](int j) { return "b" + std::to_string(j); };
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      const int target = (break_cube && j == 2) ? 3 - i : i;
      s.squares.push_back({a(i), b(j), b(j), a(target)});
    }
  }
  for (int i = 1; i <= 2; ++i) {
    s.squares.push_back({a(i), "c", "c", a(3 - i)});
  }
  for (int j = 1; j <= 2; ++j) {
    s.squares.push_back({b(j), "c", "c", b(3 - j)});
  }
  return s;
}

}  // namespace kgk::testing
