#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "qgr/basics.hpp"

namespace qgr {

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

Series series_from_char(char c);

// Cartan data of a finite-type simple Lie algebra.  Vertices are labelled
// 1..rank following the diagram conventions used throughout (A/D/E Bourbaki
// style, arrows pointing to the short roots of B, C, F4, G2).
struct CartanData {
  Series series{};
  int rank = 0;
  std::vector<std::vector<int>> a;  // Cartan matrix, a[i-1][j-1]
  std::vector<int> sym;             // minimal symmetrizer d_i, sym[i-1]
  std::vector<int> star_map;        // longest-element involution, star_map[i-1]
  int dual_coxeter = 0;
  int lacing = 1;
  int longest_length = 0;  // length of the longest Weyl element of the unfolding

  int c(int i, int j) const { return a[size_t(i - 1)][size_t(j - 1)]; }
  int d(int i) const { return sym[size_t(i - 1)]; }
  int star(int i) const { return star_map[size_t(i - 1)]; }
  bool adjacent(int i, int j) const { return i != j && c(i, j) < 0; }
  bool simply_laced() const { return lacing == 1; }
  std::string type_name() const;
};

CartanData build_cartan(Series s, int rank);
CartanData build_cartan(const std::string& type);  // e.g. "A3", "B2"

// Weight in fundamental-weight coordinates, exact integers.
struct Weight {
  std::vector<i64> w;

  Weight() = default;
  explicit Weight(int rank) : w(size_t(rank), 0) {}
  int rank() const { return int(w.size()); }
  i64 coord(int i) const { return w[size_t(i - 1)]; }
  i64& coord(int i) { return w[size_t(i - 1)]; }

  friend Weight operator+(Weight a, const Weight& b) {
    for (size_t k = 0; k < a.w.size(); ++k) a.w[k] += b.w[k];
    return a;
  }
  friend Weight operator-(Weight a, const Weight& b) {
    for (size_t k = 0; k < a.w.size(); ++k) a.w[k] -= b.w[k];
    return a;
  }
  friend Weight operator*(Weight a, i64 s) {
    for (auto& x : a.w) x *= s;
    return a;
  }
  friend bool operator==(const Weight&, const Weight&) = default;
};

Weight fundamental_weight(const CartanData& g, int i);
Weight simple_root(const CartanData& g, int i);
Weight simple_reflection(const CartanData& g, int i, Weight lam);
Weight weyl_apply(const CartanData& g, std::span<const int> word, Weight lam);
Weight weyl_apply(const CartanData& g, const std::vector<int>& word, Weight lam);

// Symmetric W-invariant bilinear form with (alpha_i, alpha_j) = d_i c_ij.
Rat pairing(const CartanData& g, const Weight& lam, const Weight& mu);
i64 pairing_int(const CartanData& g, const Weight& lam, const Weight& mu);

// Memoized coefficients of the inverse quantum Cartan matrix, expanded at
// q = 0.  Thread-safe; extending the expansion order never changes values
// already handed out.
class QCartanSeries {
 public:
  explicit QCartanSeries(CartanData g);

  const CartanData& cartan() const { return g_; }
  i64 ctilde(int i, int j, int u) const;

  // Skew pairing on the variable set I x Z built from ctilde.
  i64 npair(int i, int p, int j, int s) const;

 private:
  void ensure_order(int order) const;

  CartanData g_;
  mutable std::mutex mu_;
  mutable int order_ = 0;
  // table_[i-1][j-1] = expansion coefficients of entry (i,j)
  mutable std::vector<std::vector<std::map<int, i64>>> table_;
};

}  // namespace qgr
