#include "kgk/degree.hpp"

#include <algorithm>
#include <numeric>

#include "kgk/errors.hpp"

namespace kgk {

Degree::Degree(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw Error::precondition("MalformedDegree", "rank must be at least 1");
  }
  for (int e : entries_) {
    if (e < 0) {
      throw Error::precondition("MalformedDegree",
                                "entries must be nonnegative");
    }
  }
}

Degree Degree::zero(int rank) { return Degree(std::vector<int>(rank, 0)); }

Degree Degree::unit(int rank, int axis) {
  std::vector<int> e(rank, 0);
  e.at(axis) = 1;
  return Degree(std::move(e));
}

long long Degree::total() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0LL);
}

double Degree::dot(std::span<const double> r) const {
  double s = 0.0;
  for (int i = 0; i < rank(); ++i) s += r[i] * entries_[i];
  return s;
}

bool Degree::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](int e) { return e == 0; });
}

bool Degree::leq(const Degree& other) const {
  for (int i = 0; i < rank(); ++i) {
    if (entries_[i] > other.entries_[i]) return false;
  }
  return true;
}

Degree operator+(const Degree& a, const Degree& b) {
  std::vector<int> e(a.rank());
  for (int i = 0; i < a.rank(); ++i) e[i] = a[i] + b[i];
  return Degree(std::move(e));
}

Degree operator-(const Degree& a, const Degree& b) {
  if (!b.leq(a)) {
    throw Error::precondition("BadRange", "degree difference is negative");
  }
  std::vector<int> e(a.rank());
  for (int i = 0; i < a.rank(); ++i) e[i] = a[i] - b[i];
  return Degree(std::move(e));
}

Degree operator*(int s, const Degree& a) {
  std::vector<int> e(a.rank());
  for (int i = 0; i < a.rank(); ++i) e[i] = s * a[i];
  return Degree(std::move(e));
}

Degree Degree::join(const Degree& a, const Degree& b) {
  std::vector<int> e(a.rank());
  for (int i = 0; i < a.rank(); ++i) e[i] = std::max(a[i], b[i]);
  return Degree(std::move(e));
}

Degree Degree::meet(const Degree& a, const Degree& b) {
  std::vector<int> e(a.rank());
  for (int i = 0; i < a.rank(); ++i) e[i] = std::min(a[i], b[i]);
  return Degree(std::move(e));
}

bool Degree::lex_less(const Degree& a, const Degree& b) {
  return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(),
                                      b.entries_.begin(), b.entries_.end());
}

std::string Degree::to_string() const {
  std::string s = "(";
  for (int i = 0; i < rank(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(entries_[i]);
  }
  return s + ")";
}

std::vector<Degree> degrees_up_to(const Degree& bound) {
  std::vector<Degree> out;
  std::vector<int> cur(bound.rank(), 0);
  while (true) {
    out.emplace_back(cur);
    int i = bound.rank() - 1;
    while (i >= 0 && cur[i] == bound[i]) {
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end(), Degree::lex_less);
  return out;
}

bool degree_lemma_check(int rank, int bound) {
  if (rank < 1 || bound < 1) {
    throw Error::precondition("MalformedDegree",
                              "rank and bound must be at least 1");
  }
  std::vector<int> top(rank, bound);
  const std::vector<Degree> box = degrees_up_to(Degree(top));
  for (const Degree& m : box) {
    for (const Degree& n : box) {
      for (const Degree& p : box) {
        // q = m + p - n must lie in N^k
        bool ok = true;
        std::vector<int> qe(rank);
        for (int i = 0; i < rank; ++i) {
          qe[i] = m[i] + p[i] - n[i];
          if (qe[i] < 0) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        const Degree q(qe);
        const bool lhs = (m + p == Degree::join(m, n));
        const bool rhs = Degree::meet(p, q).is_zero();
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

}  // namespace kgk
