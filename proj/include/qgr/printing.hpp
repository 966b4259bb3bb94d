#pragma once

#include <string>

#include "qgr/qcluster.hpp"
#include "qgr/torus.hpp"

namespace qgr {

// Canonical, diff-stable text form.  Factors inside a monomial are ordered by
// (index ascending, spectral descending); terms are ordered by comparing
// exponents along the same variable order, larger exponent first.
std::string to_string(const TorusElement& x);

// JSON form with the same canonical ordering; bit-exact round trip through
// parse_element.
std::string to_json(const TorusElement& x);
TorusElement parse_element_json(const std::string& text, const std::shared_ptr<YTorus>& yt);

// compact parser for expressions like "Y(1,0)*Y(2,1)^-1 + 2*Y(1,-2)" over the
// Y torus (classical coefficients; t powers written t^{k/2} are accepted)
TorusElement parse_element(const std::string& text, const std::shared_ptr<YTorus>& yt);

// DOT rendering of a window quiver with lattice labels; frozen slots boxed
std::string quiver_dot(const Quiver& quiver, const CompatiblePair& pair, const AdaptedSeq& seq);

}  // namespace qgr
