#ifndef BILOPS_PARAMPOLY_HPP
#define BILOPS_PARAMPOLY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bilops/rational.hpp"

namespace bilops {

/// Sparse multivariate polynomial over Rational in named parameters
/// (default {"l","m"}).  No zero coefficients are stored.
class ParamPoly {
  public:
    using Exponents = std::vector<int>;

    ParamPoly() : vars_{"l", "m"} {}
    explicit ParamPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static ParamPoly constant(const Rational& c,
                              std::vector<std::string> vars = {"l", "m"});
    static ParamPoly variable(int index, std::vector<std::string> vars = {"l", "m"});

    const std::vector<std::string>& vars() const { return vars_; }
    int nvars() const { return static_cast<int>(vars_.size()); }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // 0 for the zero polynomial
    int total_degree() const;         // -1 for zero
    int degree_in(int var) const;     // -1 for zero

    void add_term(const Exponents& e, const Rational& c);

    ParamPoly operator-() const;
    ParamPoly operator+(const ParamPoly& o) const;
    ParamPoly operator-(const ParamPoly& o) const;
    ParamPoly operator*(const ParamPoly& o) const;
    ParamPoly operator*(const Rational& c) const;
    bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }

    Rational eval(const std::vector<Rational>& point) const;
    ParamPoly substitute(int var, const ParamPoly& value) const;
    ParamPoly derivative(int var) const;

    // Coefficients as polynomials in the other variables, indexed by the
    // power of `var`; size degree_in(var)+1 (empty for the zero polynomial).
    std::vector<ParamPoly> coeffs_in(int var) const;
    // Dense coefficient list; throws unless the polynomial involves only `var`.
    std::vector<Rational> univariate_coeffs(int var) const;

    // Exact quotient; throws ConfigError if the division is not exact.
    ParamPoly exact_divide(const ParamPoly& divisor) const;
    bool divides_into(const ParamPoly& dividend) const;

    // gcd of all coefficients (positive), 0 for the zero polynomial.
    Rational content() const;

    std::string str() const;

  private:
    std::vector<std::string> vars_;
    std::map<Exponents, Rational> terms_;
};

// Fraction-free (Bareiss) determinant of a square matrix of polynomials.
ParamPoly det_bareiss(const std::vector<std::vector<ParamPoly>>& m);

// Resultant of p and q with respect to `var` (Sylvester determinant).
// Zero if either polynomial is zero.
ParamPoly resultant(const ParamPoly& p, const ParamPoly& q, int var);

// Monic gcd of univariate polynomials (in `var`); zero if both are zero.
ParamPoly gcd_univariate(const ParamPoly& p, const ParamPoly& q, int var);

}  // namespace bilops

#endif
