#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qgr/klalg.hpp"
#include "qgr/printing.hpp"
#include "qgr/subst.hpp"

using namespace qgr;

namespace {

// convenience: entry must be the polynomial with the given rendering
void check_poly_row(const SubstTable& table, int i, int p, const std::string& expect) {
  auto& e = psi_on_generator(table, i, p);
  INFO("row (", i, ",", p, ") = ", subst_entry_text(e));
  CHECK(!e.is_quotient);
  CHECK(e.num == parse_element(expect, table.yt));
}

void check_quot_row(const SubstTable& table, int i, int p, const std::string& den_expect) {
  auto& e = psi_on_generator(table, i, p);
  INFO("row (", i, ",", p, ") = ", subst_entry_text(e));
  CHECK(e.is_quotient);
  CHECK(e.num == TorusElement::one(table.yt));
  CHECK(e.den == parse_element(den_expect, table.yt));
}

}  // namespace

TEST_CASE("script derivation") {
  auto a2 = build_cartan("A2");
  auto script = derive_move_script(a2, {2, 1, 2}, {2, 1, 2});
  CHECK(script.moves.empty());
  auto script2 = derive_move_script(a2, {2, 1, 2}, {1, 2, 1});
  REQUIRE(script2.moves.size() == 1);
  CHECK(script2.moves[0].kind == 'b');
  CHECK(script2.moves[0].k == 1);

  auto a3 = build_cartan("A3");
  auto script3 = derive_move_script(a3, {2, 1, 3, 2, 1, 3}, {2, 3, 2, 1, 2, 3});
  // one commutation to align, then a single braid
  int betas = 0;
  for (auto& mv : script3.moves) betas += mv.kind == 'b';
  CHECK(betas == 1);
  CHECK_THROWS(derive_move_script(a3, {1, 2, 1, 3, 2, 1}, {1, 2, 1, 3, 2, 2}));
}

TEST_CASE("substitution table: rank-two self-map at t=1") {
  auto src = make_qdatum("A2", {0, -1});
  auto tgt = make_qdatum("A2", {0, 1});
  auto table = build_subst_table(src, tgt, 1, /*classical=*/true);

  // m = 0 rows
  check_poly_row(table, 1, 0, "Y(2,1)^-1*Y(1,0) + Y(2,-1)");
  check_quot_row(table, 1, -2, "Y(2,1)^-1 + Y(2,-1)*Y(1,0)^-1");
  check_poly_row(table, 1, -4, "Y(1,-4)*Y(1,-2)");
  check_poly_row(table, 2, -1, "Y(2,-1)*Y(2,1)");
  check_poly_row(table, 2, -3, "Y(1,-2)^-1*Y(2,-3) + Y(1,-4)");
  check_quot_row(table, 2, -5, "Y(1,-2)^-1 + Y(1,-4)*Y(2,-3)^-1");

  // m = 1 rows
  check_poly_row(table, 1, -6, "Y(2,-5)^-1*Y(1,-6) + Y(2,-7)");
  check_quot_row(table, 1, -8, "Y(2,-5)^-1 + Y(2,-7)*Y(1,-6)^-1");
  check_poly_row(table, 1, -10, "Y(1,-10)*Y(1,-8)");
  check_poly_row(table, 2, -7, "Y(2,-7)*Y(2,-5)");
  check_poly_row(table, 2, -9, "Y(1,-8)^-1*Y(2,-9) + Y(1,-10)");
  check_quot_row(table, 2, -11, "Y(1,-8)^-1 + Y(1,-10)*Y(2,-9)^-1");
}

TEST_CASE("substitution table: folded to unfolded at t=1") {
  auto src = make_qdatum("B2", {-3, 0, -1});
  auto tgt = make_qdatum("A3", {-1, 0, -1});
  auto table = build_subst_table(src, tgt, 0, /*classical=*/true);

  check_poly_row(table, 1, -3, "Y(1,-3)*Y(1,-1)");
  check_poly_row(table, 1, -7, "Y(1,-5)");
  check_poly_row(table, 1, -11, "Y(1,-7)");
  check_poly_row(table, 2, 0, "Y(2,0)");
  check_poly_row(table, 2, -2, "Y(2,-2)*Y(1,-1)^-1 + Y(1,-3)");
  check_quot_row(table, 2, -4, "Y(1,-1)^-1 + Y(2,-2)^-1*Y(1,-3)");
  check_poly_row(table, 2, -6, "Y(2,-4)");
  check_poly_row(table, 2, -8, "Y(3,-7) + Y(2,-6)*Y(3,-5)^-1");
  check_quot_row(table, 2, -10, "Y(2,-6)^-1*Y(3,-7) + Y(3,-5)^-1");
  check_poly_row(table, 1, -1, "Y(3,-1)");
  check_poly_row(table, 1, -5, "Y(3,-3)");
  check_poly_row(table, 1, -9, "Y(3,-7)*Y(3,-5)");
}

TEST_CASE("periodicity of the table") {
  auto src = make_qdatum("A2", {0, -1});
  auto tgt = make_qdatum("A2", {0, 1});
  auto table = build_subst_table(src, tgt, 1, true);
  // rows one source period down equal the dual-shifted base rows
  for (auto [i, p] : std::initializer_list<std::pair<int, int>>{
           {1, 0}, {1, -2}, {1, -4}, {2, -1}, {2, -3}, {2, -5}}) {
    int i1 = src.folded.star(i), p1 = p - src.period();
    auto shifted = shifted_entry(table, i1, p1, 1);
    CHECK(entries_equal(shifted, psi_on_generator(table, i1, p1)));
  }
}

TEST_CASE("round trip through the reverse table") {
  auto src = make_qdatum("A2", {0, -1});
  auto tgt = make_qdatum("A2", {0, 1});
  auto fwd = build_subst_table(src, tgt, 1, true);
  auto rev = build_subst_table(tgt, src, 1, true);
  // transporting a generator forward and substituting back must return it
  for (auto [i, p] : std::initializer_list<std::pair<int, int>>{{1, -4}, {2, -1}}) {
    auto& e = psi_on_generator(fwd, i, p);
    REQUIRE(!e.is_quotient);
    auto back = transport_character(rev, e.num);
    REQUIRE(back.poly);
    // the result lives over the reverse table's target torus
    CHECK(back.value == TorusElement::monomial(rev.yt, ExpVec::unit(rev.yt->var(i, p))));
  }
}

TEST_CASE("quantum and classical tables agree at t=1") {
  auto src = make_qdatum("A2", {0, -1});
  auto tgt = make_qdatum("A2", {0, 1});
  auto cls = build_subst_table(src, tgt, 1, true);
  auto qt = build_subst_table(src, tgt, 1, false);
  for (auto& [key, centry] : cls.rows) {
    auto& qentry = qt.rows.at(key);
    CHECK(qentry.num.eval_t1(cls.yt) == centry.num);
    if (centry.is_quotient || qentry.is_quotient) {
      TorusElement qden = qentry.is_quotient ? qentry.den : TorusElement::one(qt.yt);
      TorusElement cden = centry.is_quotient ? centry.den : TorusElement::one(cls.yt);
      CHECK(qden.eval_t1(cls.yt) == cden);
    }
    // quantum numerators and denominators are bar-invariant
    CHECK(qentry.num.bar_invariant());
    if (qentry.is_quotient) CHECK(qentry.den.bar_invariant());
  }
}

TEST_CASE("character transport: rank-two self-map") {
  auto src = make_qdatum("A2", {0, -1});
  auto tgt = make_qdatum("A2", {0, 1});
  auto table = build_subst_table(src, tgt, 1, true);
  auto chi = classical_character(table.yt_src, src, ExpVec::unit(table.yt_src->var(2, -7)));
  auto out = transport_character(table, chi.element);
  REQUIRE(out.poly);
  TorusElement expect = parse_element(
      "Y(2,-7)*Y(2,-5) + Y(2,-5)^-1*Y(1,-6)*Y(1,-2)^-1 + Y(2,-7)*Y(1,-2)^-1 + "
      "Y(2,-5)^-1*Y(1,-6)*Y(1,-4)*Y(2,-3)^-1 + Y(2,-7)*Y(1,-4)*Y(2,-3)^-1 + "
      "Y(1,-4)^-1*Y(1,-2)^-1",
      table.yt);
  CHECK(out.value == expect);
  // and it is itself the character of the doubled class
  auto chi2 = classical_character(table.yt, tgt,
                                  y_monomial(table.yt, {{{2, -7}, 1}, {{2, -5}, 1}}));
  CHECK(out.value == chi2.element);
}

TEST_CASE("character transport: folded to unfolded") {
  auto src = make_qdatum("B2", {-3, 0, -1});
  auto tgt = make_qdatum("A3", {-1, 0, -1});
  auto table = build_subst_table(src, tgt, 0, true);
  auto chi = classical_character(table.yt_src, src, ExpVec::unit(table.yt_src->var(1, -7)));
  auto out = transport_character(table, chi.element);
  REQUIRE(out.poly);
  auto chi_tgt = classical_character(table.yt, tgt, ExpVec::unit(table.yt->var(1, -5)));
  CHECK(out.value == chi_tgt.element);
  // transporting the unit is the unit
  auto unit = transport_character(table, TorusElement::one(table.yt_src));
  REQUIRE(unit.poly);
  CHECK(unit.value == TorusElement::one(table.yt));
}

TEST_CASE("tracked script images satisfy the displayed exchange relations") {
  // rank-two self-map: the image of the source variable at (2,-3) satisfies
  // Z * X(1,-2) = X(1,0) X(2,-3) + X(2,-1) X(1,-4) over the initial torus
  auto tgt = make_qdatum("A2", {0, 1});
  auto src = make_qdatum("A2", {0, -1});
  auto seq_tgt = generate_adapted(tgt);
  auto seq_src = generate_adapted(src);
  auto script =
      derive_move_script(tgt.unfolded, seq_tgt.prefix_vec(3), seq_src.prefix_vec(3));
  EtaMap eta(seq_tgt, 24, /*classical=*/true);
  Seed seed = eta.fresh_seed();
  apply_script_periodic(script, seed, 6);
  auto slot = [&](int iv, int p) { return eta.seq().rho_inv(RepPoint{iv, p}, 24); };
  auto var_mono = [&](int iv, int p) {
    return TorusElement::monomial(seed.ambient, ExpVec::unit(slot(iv, p)));
  };
  for (int m6 : {0, 6}) {
    int u = seq_src.rho_inv(RepPoint{2, -3 - m6}, 24);
    TorusElement lhs = seed.var(u) * var_mono(1, -2 - m6);
    TorusElement rhs = var_mono(1, 0 - m6) * var_mono(2, -3 - m6) +
                       var_mono(2, -1 - m6) * var_mono(1, -4 - m6);
    CHECK(lhs == rhs);
    // untouched deep variables stay initial
    int w = seq_src.rho_inv(RepPoint{1, -4 - m6}, 24);
    CHECK(seed.var(w) == var_mono(1, -4 - m6));
  }
}
