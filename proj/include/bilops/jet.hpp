#ifndef BILOPS_JET_HPP
#define BILOPS_JET_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bilops/fiber.hpp"

namespace bilops {

/// Vector field monomial x^a d_b (b is 0-based).
struct FieldMonomial {
    std::vector<int> a;
    int b = 0;

    int coeff_degree() const;
    Weight weight() const;  // a - e_b
    std::string str() const;
};

/// Lie bracket [x^a d_b, x^c d_e] as a list of monomials with coefficients.
std::vector<std::pair<FieldMonomial, Rational>> field_bracket(const FieldMonomial& x,
                                                              const FieldMonomial& y);

/// Basis key of I(V1*, V2*): d'-monomial, d''-monomial and fiber indices.
struct JetKey {
    std::vector<int> a1, a2;
    int i = 0, j = 0;

    int degree() const;
    bool operator==(const JetKey& o) const;
};

/// Deterministic key order: lex-descending on (a1|a2), then (i,j) ascending.
struct JetKeyLess {
    bool operator()(const JetKey& x, const JetKey& y) const;
};

Weight key_weight(const JetKey& k, const IrredFiber& f1, const IrredFiber& f2);

/// Homogeneous element of I(V1*, V2*): sparse rational combination of keys.
struct JetVector {
    int n = 1;
    int degree = 0;
    std::map<JetKey, Rational, JetKeyLess> terms;

    void add(const JetKey& k, const Rational& c);
    bool is_zero() const { return terms.empty(); }
    JetVector& operator+=(const JetVector& o);
    JetVector operator*(const Rational& c) const;
    bool operator==(const JetVector& o) const { return n == o.n && terms == o.terms; }
    /// Scale so the first key (in key order) has coefficient 1.
    JetVector normalized() const;
};

/// All keys of degree d (and weight nu, when given), deterministically
/// ordered.  Fiber indices run over the full truncated bases.
std::vector<JetKey> jet_basis(const IrredFiber& f1, const IrredFiber& f2, int d,
                              const std::optional<Weight>& nu = std::nullopt);

/// The action of x^a d_b on I(V1*,V2*): on each tensor slot separately,
///   I(d^alpha ( u) = -ff(alpha,a) d^(alpha-a+e_b) ( u
///                    + sum_t a_t ff(alpha, a-e_t) d^(alpha-a+e_t) ( E^t_b u,
/// with ff the coordinatewise falling factorial (zero when alpha < a).
JetVector act_field(const FieldMonomial& xi, const JetVector& v, const IrredFiber& f1,
                    const IrredFiber& f2);

/// Generator action restricted to one tensor slot (1 or 2) of a jet vector;
/// fiber action only, no derivative bookkeeping (used for the degree-0
/// weight elements below).
JetVector act_fiber_slot(int slot, int gi, int gj, const JetVector& v, const IrredFiber& f1,
                         const IrredFiber& f2);

/// Degree-0 weight element (s; P(i)) = sum_i c_i P(i) v_i ( w_{s-i} with the
/// coefficient family fixed by
///   x_+ (s,P) = (s-1, P(i)-P(i+1)),
///   x'_- (s,P) = (s+1, i(i-lambda-1) P(i-1)),
///   x''_-(s,P) = (s+1, -(i+mu-s)(i-s-1) P(i)).
/// P is given by its coefficient list in the index variable.
JetVector su_pair(int s, const std::vector<Rational>& poly_in_i, const IrredFiber& f1,
                  const IrredFiber& f2);

Rational eval_poly_at(const std::vector<Rational>& coeffs, const Rational& x);

}  // namespace bilops

#endif
