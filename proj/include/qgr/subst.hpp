#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qgr/qgroth.hpp"

namespace qgr {

struct Move {
  char kind = 'g';  // 'g' commutation, 'b' braid
  int k = 0;        // word position
};

// Moves listed in application order: moves[0] transforms the target-side
// prefix first.  Applying all of them turns the target prefix into the
// source prefix.
struct MoveScript {
  std::vector<Move> moves;
  int ell = 0;
};

MoveScript derive_move_script(const CartanData& delta, const std::vector<int>& tgt_prefix,
                              const std::vector<int>& src_prefix);

// Applies the script to a seed over the target window, replicating every move
// across `periods` word-periods.  Afterwards slot u carries the image of the
// u-th initial variable of the source-side algebra.
void apply_script_periodic(const MoveScript& script, Seed& seed, int periods);

// Left quotient den^{-1} * num over the target torus; den == 1 when the value
// is polynomial.
struct SubstEntry {
  TorusElement num;
  TorusElement den;
  bool is_quotient = false;
};

bool entries_equal(const SubstEntry& a, const SubstEntry& b);

struct SubstTable {
  QDatum src, tgt;
  bool classical = true;
  int mmax = 0;
  std::shared_ptr<YTorus> yt;             // target torus carrying the values
  std::shared_ptr<YTorus> yt_src;         // source torus (for keys/round trips)
  MoveScript script;
  std::map<std::pair<int, int>, SubstEntry> rows;  // source (i, p), folded
};

// Derives the substitution table between two Q-data on the same unfolded
// diagram; rows cover the fundamental source windows m = 0 .. mmax.
SubstTable build_subst_table(const QDatum& src, const QDatum& tgt, int mmax, bool classical);

const SubstEntry& psi_on_generator(const SubstTable& table, int i, int p);

// table entries shifted k source periods down, with values shifted by the
// target dual automorphism; used both to extend and to cross-check rows
SubstEntry shifted_entry(const SubstTable& table, int i, int p, int k);

struct TransportResult {
  bool poly = false;
  TorusElement value;          // meaningful when poly
  TorusElement residual_num;   // otherwise the unreduced quotient
  TorusElement residual_den;
};

// substitutes every source variable of a classical character and clears the
// fraction; classical tables only
TransportResult transport_character(const SubstTable& table, const TorusElement& chi_src);

std::string subst_entry_text(const SubstEntry& e);
std::string subst_table_text(const SubstTable& table);
std::string subst_table_json(const SubstTable& table);

}  // namespace qgr
