#ifndef BILOPS_POLYROOTS_HPP
#define BILOPS_POLYROOTS_HPP

#include <set>

#include "bilops/parampoly.hpp"

namespace bilops {

/// Complete set of rational roots of a nonzero univariate polynomial,
/// via the rational-root theorem on the primitive integer form.
/// Throws ConfigError("identically zero") on the zero polynomial.
std::set<Rational> rational_roots(const ParamPoly& p, int var = 0);
std::set<Rational> rational_roots(const std::vector<Rational>& dense_coeffs);

/// p with repeated factors removed (univariate in `var`), made primitive.
ParamPoly squarefree_part(const ParamPoly& p, int var);

}  // namespace bilops

#endif
