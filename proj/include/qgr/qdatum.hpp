#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgr/rootdata.hpp"

namespace qgr {

// A height function on the vertices of a simply-laced diagram Delta together
// with the folding data that presents a (possibly non-simply-laced) algebra g
// as the quotient of Delta by a diagram automorphism.
struct QDatum {
  CartanData unfolded;        // simply-laced Delta
  CartanData folded;          // g
  std::vector<int> sigma;     // diagram automorphism of Delta_0, sigma[iv-1]
  std::vector<int> fold;      // Delta_0 -> I, fold[iv-1]
  std::vector<int> xi;        // heights, xi[iv-1]

  int rank_unfolded() const { return unfolded.rank; }
  int rank_folded() const { return folded.rank; }
  int sig(int iv) const { return sigma[size_t(iv - 1)]; }
  int bar(int iv) const { return fold[size_t(iv - 1)]; }
  int height(int iv) const { return xi[size_t(iv - 1)]; }
  // d_{bar(iv)} = size of the sigma-orbit of iv
  int dbar(int iv) const { return folded.d(bar(iv)); }
  int period() const { return folded.lacing * folded.dual_coxeter; }  // r h^vee

  bool is_source(int iv) const;
  bool is_sink(int iv) const;

  // parity class epsilon_{bar(iv)} derived from xi
  int parity(int i_folded) const;

  bool in_hat_delta(int iv, int p) const;           // (iv,p) in Delta^_[xi]
  bool in_hat_delta_le(int iv, int p) const;        // p <= xi additionally
  bool in_hat_I(int i, int p) const;                // folded, full lattice
  bool in_hat_I_le(int i, int p) const;             // folded, p below xi
  // unique unfolded vertex over (i,p) in Delta^_[xi], if any
  std::optional<int> lift(int i, int p) const;

  std::string describe() const;
};

struct ValidationIssue {
  std::string clause;
  std::string detail;
};

std::vector<ValidationIssue> validate_qdatum(const QDatum& q);

// Builds the Q-datum for the algebra of the given type with the given height
// function on the unfolded diagram; throws if invalid.
QDatum make_qdatum(Series s, int rank, std::vector<int> xi);
QDatum make_qdatum(const std::string& type, std::vector<int> xi);
// A valid height function for tests and defaults.
std::vector<int> default_xi(Series s, int rank);

QDatum source_reflect(const QDatum& q, int iv);
QDatum sink_unreflect(const QDatum& q, int iv);  // inverse of source_reflect
QDatum shift_dual(const QDatum& q, int sign);    // height map of D^{+-1}

struct RepPoint {
  int vertex = 0;  // unfolded vertex
  int p = 0;
  friend bool operator==(const RepPoint&, const RepPoint&) = default;
  friend auto operator<=>(const RepPoint&, const RepPoint&) = default;
};

// partial order on Delta^_[xi] generated by adjacency steps
bool rep_order_leq(const QDatum& q, RepPoint a, RepPoint b);

enum class SeqRule { PeriodicStar, DecreasingSpectral };

// Infinite sequence adapted to a Q-datum, represented by a finite prefix and
// a total generation rule.
class AdaptedSeq {
 public:
  AdaptedSeq(QDatum q, std::vector<int> prefix, SeqRule rule);

  const QDatum& datum() const { return q_; }
  SeqRule rule() const { return rule_; }
  int ell() const { return int(prefix_.size()); }
  int at(int u) const;                       // 1-based, total
  RepPoint rho(int u) const;                 // u -> (vertex, spectral)
  int rho_inv(RepPoint pt, int window) const;  // throws if not found within window
  std::vector<int> prefix_vec(int n) const;  // first n letters

 private:
  QDatum q_;
  std::vector<int> prefix_;
  SeqRule rule_;
  mutable std::vector<int> cache_;  // extended entries
  void extend_to(int u) const;
};

// first offending index (1-based) if not adapted, 0 when adapted
int adapted_violation(const QDatum& q, const std::vector<int>& prefix);
inline bool adapted_check(const QDatum& q, const std::vector<int>& prefix) {
  return adapted_violation(q, prefix) == 0;
}

// canonical adapted sequence: decreasing-spectral enumeration (ties by vertex
// index), star-periodic after the first ell letters when rule=PeriodicStar
AdaptedSeq generate_adapted(const QDatum& q, SeqRule rule = SeqRule::PeriodicStar);

// generalized Coxeter element tau as (Weyl word, sigma power) acting on weights
struct CoxeterElt {
  std::vector<int> word;
  int sigma_power = 0;
};

CoxeterElt generalized_coxeter(const QDatum& q);
Weight coxeter_apply(const QDatum& q, const CoxeterElt& tau, int power, Weight lam);

// JSON-ish serialization used by the CLI
std::string qdatum_to_json(const QDatum& q);

}  // namespace qgr
