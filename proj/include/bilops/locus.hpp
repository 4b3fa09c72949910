#ifndef BILOPS_LOCUS_HPP
#define BILOPS_LOCUS_HPP

#include <string>
#include <vector>

#include "bilops/parampoly.hpp"
#include "bilops/polyroots.hpp"

namespace bilops {

/// A rank-drop line of one of the three supported families.
struct LocusLine {
    enum Family { L = 0, M = 1, LPlusM = 2 };
    Family family;
    Rational c;

    std::string str() const;
    bool contains(const Rational& l, const Rational& m) const;
    bool operator<(const LocusLine& o) const {
        return family != o.family ? family < o.family : c < o.c;
    }
    bool operator==(const LocusLine& o) const { return family == o.family && c == o.c; }
};

/// Description of {(l,m) in Q^2 : rank M(l,m) < k} as lines of the families
/// {l=c}, {m=c}, {l+m=c} plus isolated rational points; parts that cannot be
/// certified with a rational witness are reported as residual polynomials.
struct LocusDescription {
    bool whole_plane = false;
    std::vector<LocusLine> lines;
    std::vector<std::pair<Rational, Rational>> points;
    std::vector<std::string> residual;
};

LocusDescription minor_vanishing_locus(const std::vector<std::vector<ParamPoly>>& m, int k);

/// Rank of a polynomial matrix over the fraction field Q(vars).
int generic_rank(const std::vector<std::vector<ParamPoly>>& m);

}  // namespace bilops

#endif
