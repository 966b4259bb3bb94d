#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgr/qdatum.hpp"
#include "qgr/rootdata.hpp"

namespace qgr {

using VarId = int;

// Sparse exponent vector over interned variable ids, kept sorted by id.
struct ExpVec {
  std::vector<std::pair<VarId, int>> e;

  static ExpVec unit(VarId v, int exp = 1) {
    ExpVec a;
    if (exp != 0) a.e.push_back({v, exp});
    return a;
  }
  bool empty() const { return e.empty(); }
  int exp_of(VarId v) const {
    for (auto& [w, x] : e)
      if (w == v) return x;
    return 0;
  }
  ExpVec operator+(const ExpVec& o) const;
  ExpVec operator-() const;
  ExpVec operator-(const ExpVec& o) const { return *this + (-o); }
  ExpVec operator*(int k) const;
  bool is_nonnegative() const {
    for (auto& [v, x] : e)
      if (x < 0) return false;
    return true;
  }
  friend bool operator==(const ExpVec&, const ExpVec&) = default;
  friend auto operator<=>(const ExpVec&, const ExpVec&) = default;
};

// Ambient presentation: integral skew form between variables plus naming.
class TorusContext {
 public:
  virtual ~TorusContext() = default;
  virtual i64 skew(VarId a, VarId b) const = 0;
  virtual std::string var_name(VarId v) const = 0;
  // total order used for canonical printing (smaller key prints first)
  virtual std::pair<int, int> print_key(VarId v) const = 0;

  i64 skew_form(const ExpVec& a, const ExpVec& b) const;
};

class TorusElement;

// The representation-theoretic torus: variables Y(i,p) with the skew form
// built from the inverse quantum Cartan matrix.  A "classical" twin shares
// the registry but has zero skew form (the t = 1 quotient).
class YTorus : public TorusContext, public std::enable_shared_from_this<YTorus> {
 public:
  static std::shared_ptr<YTorus> make(CartanData g, bool classical = false);

  const CartanData& cartan() const { return g_; }
  bool classical() const { return classical_; }
  std::shared_ptr<YTorus> classical_twin() const;

  VarId var(int i, int p) const;  // interning
  std::pair<int, int> ip_of(VarId v) const;
  i64 npair(int i, int p, int j, int s) const { return series_->npair(i, p, j, s); }

  i64 skew(VarId a, VarId b) const override;
  std::string var_name(VarId v) const override;
  std::pair<int, int> print_key(VarId v) const override;

 private:
  struct Registry;
  YTorus(CartanData g, bool classical, std::shared_ptr<Registry> reg,
         std::shared_ptr<QCartanSeries> series);

  CartanData g_;
  bool classical_;
  std::shared_ptr<Registry> reg_;
  std::shared_ptr<QCartanSeries> series_;
  mutable std::shared_ptr<YTorus> twin_;
};

// Cluster torus on a finite window with an explicit skew matrix.
class ClusterTorus : public TorusContext {
 public:
  ClusterTorus(std::vector<std::vector<i64>> lambda, bool classical);
  // optional display labels (vertex, spectral) per slot
  void set_labels(std::vector<RepPoint> labels) { labels_ = std::move(labels); }

  int size() const { return int(lambda_.size()); }
  bool classical() const { return classical_; }
  i64 lambda(int u, int v) const { return lambda_[size_t(u - 1)][size_t(v - 1)]; }

  i64 skew(VarId a, VarId b) const override;
  std::string var_name(VarId v) const override;
  std::pair<int, int> print_key(VarId v) const override;

 private:
  std::vector<std::vector<i64>> lambda_;
  bool classical_;
  std::vector<RepPoint> labels_;
};

// Element of a quantum torus, stored on the basis of bar-invariant
// (commutative) monomials: term (k, a) stands for t^{k/2} X^a.
class TorusElement {
 public:
  using Term = std::pair<int, ExpVec>;  // (half t-exponent, exponents)

  TorusElement() = default;
  explicit TorusElement(std::shared_ptr<const TorusContext> ctx) : ctx_(std::move(ctx)) {}

  static TorusElement zero(std::shared_ptr<const TorusContext> ctx) { return TorusElement(ctx); }
  static TorusElement monomial(std::shared_ptr<const TorusContext> ctx, ExpVec a, int t_half = 0,
                               i64 coeff = 1);
  static TorusElement one(std::shared_ptr<const TorusContext> ctx) {
    return monomial(std::move(ctx), ExpVec{});
  }

  const std::shared_ptr<const TorusContext>& context() const { return ctx_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::vector<std::pair<Term, i64>>& terms() const { return terms_; }

  // single commutative monomial times a unit t power?
  std::optional<std::pair<Term, i64>> as_single() const {
    if (terms_.size() != 1) return std::nullopt;
    return terms_.front();
  }

  TorusElement operator+(const TorusElement& o) const;
  TorusElement operator-(const TorusElement& o) const;
  TorusElement operator*(const TorusElement& o) const;
  TorusElement scale(i64 c, int t_half = 0) const;
  TorusElement operator-() const { return scale(-1); }

  TorusElement bar() const;
  bool bar_invariant() const;
  TorusElement eval_t1(std::shared_ptr<const TorusContext> classical_ctx) const;

  // inverse of a single-term element
  TorusElement inverse_monomial() const;

  // exact division: find q with q * divisor == *this (right) or
  // divisor * q == *this (left); throws on failure.  max_steps bounds the
  // quotient search, letting speculative callers bail out early.
  TorusElement divide_right(const TorusElement& divisor) const;
  TorusElement divide_left(const TorusElement& divisor) const;
  std::optional<TorusElement> try_divide_right(const TorusElement& divisor,
                                               int max_steps = 20000) const;
  std::optional<TorusElement> try_divide_left(const TorusElement& divisor,
                                              int max_steps = 20000) const;

  // map every term through an exponent transform (algebra maps between tori)
  TorusElement map_terms(std::shared_ptr<const TorusContext> new_ctx,
                         const std::function<ExpVec(const ExpVec&)>& f) const;
  // keep terms whose variables all satisfy the predicate
  TorusElement filter_vars(const std::function<bool(VarId)>& keep) const;

  void add_term(int t_half, ExpVec a, i64 coeff);

  friend bool operator==(const TorusElement& a, const TorusElement& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::shared_ptr<const TorusContext> ctx_;
  std::vector<std::pair<Term, i64>> terms_;  // sorted by Term, no zero coeffs
};

// ---- operations tied to the Y torus ----

ExpVec y_monomial(const std::shared_ptr<YTorus>& yt, std::vector<std::pair<std::pair<int, int>, int>> factors);
TorusElement y_commutative_monomial(const std::shared_ptr<YTorus>& yt, const ExpVec& m,
                                    int t_half = 0, i64 coeff = 1);

bool is_dominant(const ExpVec& m);

// exponent vector of A_{i,p}; requires (i, p - d_i) in the lattice
ExpVec a_monomial(const std::shared_ptr<YTorus>& yt, const QDatum& q, int i, int p);

enum class NakajimaResult { Less, NotLess, WindowExhausted };
// decides whether target <= source, i.e. source / target is a product of
// A-monomials with nonnegative exponents
NakajimaResult nakajima_leq(const std::shared_ptr<YTorus>& yt, const QDatum& q, const ExpVec& lo,
                            const ExpVec& hi);
// number of A-monomial factors in hi / lo, when lo <= hi
std::optional<i64> nakajima_height(const std::shared_ptr<YTorus>& yt, const QDatum& q,
                                   const ExpVec& lo, const ExpVec& hi);

// t^{N(m,m')} commutation exponent between two classical monomials
i64 y_commutation(const std::shared_ptr<YTorus>& yt, const ExpVec& m1, const ExpVec& m2);

// truncation to the sublattice p <= xi
TorusElement truncate_below(const TorusElement& x, const std::shared_ptr<YTorus>& yt,
                            const QDatum& q);

// algebra automorphism Y(i,p) -> Y(i*, p +- r h^vee)
TorusElement dual_shift(const TorusElement& x, const std::shared_ptr<YTorus>& yt, const QDatum& q,
                        int sign);
ExpVec dual_shift_exp(const ExpVec& m, const std::shared_ptr<YTorus>& yt, const QDatum& q,
                      int sign);

}  // namespace qgr
