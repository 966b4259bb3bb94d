#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qgr/qdatum.hpp"
#include "qgr/torus.hpp"

namespace qgr {

using SeqFn = std::function<int(int)>;  // total 1-based letter accessor

SeqFn seq_from_vector(std::vector<int> letters, int alphabet);  // cyclic extension
SeqFn seq_from_adapted(const AdaptedSeq& seq);

// Windowed compatible pair attached to a letter sequence.
struct CompatiblePair {
  int n = 0;
  CartanData cartan;                      // diagram the letters live on
  std::vector<int> letters;               // letters[u-1] = i_u for u in [1, n]
  std::vector<std::vector<i64>> lambda;   // n x n, skew-symmetric
  std::vector<std::vector<i64>> btilde;   // n x n; frozen columns informational only
  std::vector<char> frozen;               // frozen[u-1]
  std::vector<int> dcol;                  // d_{i_u}

  i64 lam(int u, int v) const { return lambda[size_t(u - 1)][size_t(v - 1)]; }
  i64 b(int u, int v) const { return btilde[size_t(u - 1)][size_t(v - 1)]; }
  bool is_frozen(int u) const { return frozen[size_t(u - 1)] != 0; }
  int letter(int u) const { return letters[size_t(u - 1)]; }
};

CompatiblePair build_pair(const CartanData& g, const SeqFn& seq, int n);
// throws when the defining identity sum_k b_{k,u} lambda_{k,v} = 2 d_u delta
// fails for some exchangeable u
void verify_compatibility(const CompatiblePair& p);

CompatiblePair mutate_pair(const CompatiblePair& p, int k, bool verify = true);
// relabel slots: new slot u holds old slot pi_inv(u); pi_inv must be an
// involution-free permutation vector of size n (1-based values)
CompatiblePair permute_pair(const CompatiblePair& p, const std::vector<int>& pi_inv);

// ---- quivers ----

// arrow multiset keyed by (from, to)
using Quiver = std::map<std::pair<int, int>, int>;

Quiver build_quiver(const CartanData& g, const SeqFn& seq, int n);  // simply-laced only

// labeled arrow multiset keyed by folded lattice points
using LabeledQuiver = std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, int>;

// the quantum affine quiver on a finite set of lattice points
LabeledQuiver affine_quiver(const QDatum& q, const std::vector<std::pair<int, int>>& points);
// relabel a window quiver through u -> folded rho(u)
LabeledQuiver relabel_quiver(const Quiver& quiver, const AdaptedSeq& seq);

// ---- seeds ----

struct Seed {
  CompatiblePair pair;
  std::shared_ptr<ClusterTorus> ambient;
  std::vector<TorusElement> vars;  // vars[u-1]
  int safe_n = 0;                  // slots <= safe_n carry trustworthy data
  std::vector<std::string> history;

  const TorusElement& var(int u) const { return vars[size_t(u - 1)]; }
};

Seed initial_seed(CompatiblePair pair, bool classical,
                  const std::vector<RepPoint>& labels = {});

void seed_mutate(Seed& s, int k);
void seed_swap_adjacent(Seed& s, int k);      // plain slot swap of k, k+1
void seed_gamma(Seed& s, int k);              // commutation move
void seed_beta(Seed& s, int k);               // braid move
void seed_forward_shift(Seed& s);             // shift op; shrinks the safe window

// ---- degrees ----

// extract the pointed degree of x with respect to p; nullopt when not pointed
std::optional<ExpVec> degree_of(const TorusElement& x, const CompatiblePair& p);

// degree transport through a single mutation: x' lives over mu_k(pair); the
// returned vector is the degree of its image over pair.  `mutated` must be
// mu_k(pair).
ExpVec trop_transport(const ExpVec& gprime, const CompatiblePair& mutated, int k);

// degree transport through moves (valid unconditionally for gamma; the shift
// rule applies only when the degree lies in the nonnegative cone of the
// shifted sequence, otherwise nullopt is returned)
ExpVec gamma_degree(const ExpVec& gprime, int k);
ExpVec beta_degree(const ExpVec& gprime, const CompatiblePair& before, int k);
std::optional<ExpVec> shift_degree(const ExpVec& gprime, const SeqFn& seq_before, int window);

bool cone_member(const ExpVec& g, const SeqFn& seq, int window);
i64 p_sum(const ExpVec& g, const SeqFn& seq, int letter, int window);

// piecewise-linear transport of lattice parameters under a word move
std::vector<i64> lusztig_gamma(const std::vector<i64>& c, int k);
std::vector<i64> lusztig_beta(const std::vector<i64>& c, int k);

// helpers for positions within a sequence
int next_occurrence(const SeqFn& seq, int u);                 // u^+
int prev_occurrence(const SeqFn& seq, int u);                 // u^- (0 if none)
int prev_occurrence_of(const SeqFn& seq, int u, int letter);  // u^-(j)

}  // namespace qgr
