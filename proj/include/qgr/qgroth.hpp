#pragma once

#include <map>
#include <memory>
#include <optional>

#include "qgr/qcluster.hpp"
#include "qgr/torus.hpp"

namespace qgr {

// KR-type monomial: the product of Y_{bar(iv), p} over lattice points of one
// unfolded row with spectral parameter in [a, b].
ExpVec kr_exponents(const std::shared_ptr<YTorus>& yt, const QDatum& q, int iv, int a, int b);

// Dictionary between a windowed cluster torus over an adapted sequence and
// the spectral-parameter-bounded part of the Y torus.  Slot u maps to the
// commutative monomial of the KR exponents at rho(u).
class EtaMap {
 public:
  EtaMap(AdaptedSeq seq, int window, bool classical);

  const AdaptedSeq& seq() const { return seq_; }
  const QDatum& datum() const { return seq_.datum(); }
  int window() const { return window_; }
  const std::shared_ptr<YTorus>& ytorus() const { return yt_; }
  const CompatiblePair& pair() const { return pair_; }
  const std::vector<RepPoint>& labels() const { return labels_; }

  // image of slot u as an exponent vector on the Y side
  const ExpVec& slot_image(int u) const;

  TorusElement apply(const TorusElement& x) const;    // cluster side -> Y side
  TorusElement inverse(const TorusElement& y) const;  // Y side (p <= xi) -> cluster side
  ExpVec inverse_exp(const ExpVec& m) const;

  Seed fresh_seed() const;  // initial seed over the window

 private:
  AdaptedSeq seq_;
  int window_;
  bool classical_;
  std::shared_ptr<YTorus> yt_;
  CompatiblePair pair_;
  std::vector<ExpVec> images_;       // per slot
  std::vector<RepPoint> labels_;
  std::map<std::pair<int, int>, int> slot_of_;  // lattice point -> slot
};

// eta image of the truncated fundamental-class tower: the cluster variable
// obtained from slot u of the k-fold shifted window, expressed on the Y side.
// rho_{shift^k seq}(u) = (iv, p).
TorusElement trunc_ft_kr(const EtaMap& eta, int iv, int p, int k);

struct TsysReport {
  bool ok = false;
  int a_half = 0;  // exponent of t in half units
  int b_half = 0;
  std::string detail;
  TorusElement lhs, rhs_main, rhs_prod;
};

// Checks the exact quadratic identity between interval classes over [p, s]
// on the row of iv.  kr_class(iv, a, b) must return the class of the closed
// interval [a, b] on the row of iv (the unit element when empty); both the
// truncated cluster images and full deformed classes qualify.
using KrClassFn = std::function<TorusElement(int iv, int a, int b)>;
TsysReport t_system_check(const QDatum& q, int iv, int p, int s, const KrClassFn& kr_class);

std::string tsys_report_json(const TsysReport& r);

}  // namespace qgr
