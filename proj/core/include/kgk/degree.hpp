#pragma once

#include <span>
#include <string>
#include <vector>

namespace kgk {

// Multi-index in N^k with the coordinatewise partial order. Rank is fixed at
// construction; all entries are nonnegative.
class Degree {
 public:
  Degree() = default;
  explicit Degree(std::vector<int> entries);
  static Degree zero(int rank);
  static Degree unit(int rank, int axis);  // e_axis, 0-based axis

  int rank() const { return static_cast<int>(entries_.size()); }
  int operator[](int i) const { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }

  long long total() const;                      // sum of entries
  double dot(std::span<const double> r) const;  // r . n

  bool is_zero() const;
  bool leq(const Degree& other) const;  // coordinatewise <=
  bool operator==(const Degree&) const = default;

  friend Degree operator+(const Degree& a, const Degree& b);
  // a - b; requires b.leq(a)
  friend Degree operator-(const Degree& a, const Degree& b);
  friend Degree operator*(int s, const Degree& a);

  static Degree join(const Degree& a, const Degree& b);  // coordinatewise max
  static Degree meet(const Degree& a, const Degree& b);  // coordinatewise min

  // Lexicographic order on entry tuples; used for deterministic layouts.
  static bool lex_less(const Degree& a, const Degree& b);

  std::string to_string() const;  // "(n1,...,nk)"

 private:
  std::vector<int> entries_;
};

// All degrees n <= bound, in lexicographic order.
std::vector<Degree> degrees_up_to(const Degree& bound);

// Exhaustive check of the order fact behind minimal common extensions:
// for all m,n,p,q in {0..bound}^k with m+p == n+q,
//   m+p == join(m,n)  <=>  meet(p,q) == 0.
// Returns true iff no counterexample exists.
bool degree_lemma_check(int rank, int bound);

}  // namespace kgk
