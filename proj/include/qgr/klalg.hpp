#pragma once

#include <map>
#include <memory>
#include <optional>

#include "qgr/torus.hpp"

namespace qgr {

struct Budget {
  int max_monomials = 10000;
};

struct CharResult {
  TorusElement element;
  ExpVec dominant;
  bool thin = false;
  i64 term_count = 0;
};

// classical character of the simple class with dominant monomial m, computed
// by i-string closure from the top; certified afterwards by the kernel
// membership checks at t = 1
CharResult classical_character(const std::shared_ptr<YTorus>& classical_yt, const QDatum& q,
                               const ExpVec& m, const Budget& budget = {});

// the t-deformed class of a thin module: all coefficients 1 on the
// commutative-monomial basis; certified by the kernel membership checks.
// Throws when the closure is not multiplicity-free or a check fails.
CharResult thin_class(const std::shared_ptr<YTorus>& yt, const QDatum& q, const ExpVec& m,
                      const Budget& budget = {});

struct ScreenResult {
  bool ok = false;
  TorusElement residual;
};

// membership in the i-th kernel subalgebra, via greedy peeling against the
// block generators Y(i,p)(1 + t^{-1} A(i,p+d)^{-1})
ScreenResult screening_check(const std::shared_ptr<YTorus>& yt, const QDatum& q,
                             const TorusElement& x, int i);

// canonical-basis element attached to m, triangularized from the ordered
// product of fundamental classes; fundamentals are computed thin.
// corrections collects the subtracted coefficients per lower dominant.
struct KlResult {
  TorusElement element;
  std::map<ExpVec, THalfPoly> corrections;
};
KlResult kl_canonical(const std::shared_ptr<YTorus>& yt, const QDatum& q, const ExpVec& m,
                      const Budget& budget = {});

// ordered product of fundamental classes with the normalizing power of t
TorusElement standard_class(const std::shared_ptr<YTorus>& yt, const QDatum& q, const ExpVec& m,
                            const Budget& budget = {});

// coefficients a_t[m; m'] of the canonical element on commutative monomials
std::map<ExpVec, THalfPoly> coefficient_table(const TorusElement& x);

}  // namespace qgr
