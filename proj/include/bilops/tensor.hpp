#ifndef BILOPS_TENSOR_HPP
#define BILOPS_TENSOR_HPP

#include <compare>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "bilops/jet.hpp"

namespace bilops {

/// Polynomial in x_1..x_n: x-multidegree -> coefficient.
using Poly = std::map<std::vector<int>, Rational>;

Poly poly_zero();
Poly poly_monomial(const std::vector<int>& e, const Rational& c);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Rational& c);
Poly poly_derivative(const Poly& a, int var);
int poly_degree(const Poly& a);  // -1 for zero

/// Polynomial vector field: n polynomial components.
struct VectorFieldPoly {
    int n = 1;
    std::vector<Poly> comp;

    static VectorFieldPoly from_monomial(const FieldMonomial& m);
    Poly divergence() const;
    int degree() const;
};

enum class Kind { Scalar, Form, Polyvector, Symtensor, VVForm };

std::string kind_str(Kind k, int degree);

/// Fiber label of one tensor coefficient: an index subset for forms and
/// polyvectors (strictly increasing, stored as a bitmask), a momentum
/// multidegree for symmetric tensors, and a vector slot for vector-valued
/// forms.
struct FiberKey {
    unsigned mask = 0;
    std::vector<int> mom;
    int vec = -1;

    auto operator<=>(const FiberKey&) const = default;
};

/// Exact polynomial tensor field on Q^n: a density-twisted scalar, p-form,
/// k-polyvector (odd coordinates), symmetric k-tensor (momenta) or
/// vector-valued p-form.  Operations are exact; the validity degree tracks
/// through which x-degree the coefficients are trustworthy when a field was
/// constructed as a truncation.
class TensorField {
  public:
    TensorField() = default;
    TensorField(Kind kind, int degree, int n, const Rational& twist);

    static TensorField scalar(int n, const Poly& coeff, const Rational& twist = 0);
    static TensorField zero_like(const TensorField& shape);

    Kind kind() const { return kind_; }
    int degree() const { return degree_; }
    int n() const { return n_; }
    const Rational& twist() const { return twist_; }
    int validity() const { return validity_; }
    void set_validity(int v) { validity_ = v; }
    static constexpr int kExactEverywhere = std::numeric_limits<int>::max();

    const std::map<std::pair<FiberKey, std::vector<int>>, Rational>& coeffs() const {
        return coeffs_;
    }
    void add(const FiberKey& fk, const std::vector<int>& xdeg, const Rational& c);
    bool is_zero() const { return coeffs_.empty(); }
    /// Zero through the validity degree (the honest emptiness test).
    bool is_zero_within_validity() const;
    int max_x_degree() const;

    TensorField operator+(const TensorField& o) const;
    TensorField operator*(const Rational& c) const;
    /// In-place this += o * c.
    TensorField& add_scaled(const TensorField& o, const Rational& c);
    bool operator==(const TensorField& o) const;

    std::string str() const;

  private:
    Kind kind_ = Kind::Scalar;
    int degree_ = 0;
    int n_ = 1;
    Rational twist_ = 0;
    int validity_ = kExactEverywhere;
    std::map<std::pair<FiberKey, std::vector<int>>, Rational> coeffs_;
};

/// Twisted Lie derivative: Cartan on forms, the odd-coordinate lift on
/// polyvectors, the momentum lift on symmetric tensors, plus
/// twist * Div(xi) on everything.
TensorField lie_derivative(const VectorFieldPoly& xi, const TensorField& s);
TensorField lie_derivative(const FieldMonomial& xi, const TensorField& s);

/// Coefficient-wise exterior differential (keeps the twist).
TensorField ext_d(const TensorField& form);

/// Graded product: form^form, polyvector^polyvector, scalar * anything,
/// symtensor * symtensor, form ^ vvform; twists add.
TensorField wedge(const TensorField& a, const TensorField& b);

/// Interior product of a polynomial vector field into a form.
TensorField contract(const VectorFieldPoly& xi, const TensorField& form);

/// Iterated interior product of a polyvector into a form (natural pairing).
TensorField contract_polyvector(const TensorField& polyvec, const TensorField& form);

/// Divergence of a polyvector: sum_i d^2/(dx_i dxv_i); degree drops by one.
TensorField div_polyvector(const TensorField& x);

/// Odd Poisson (Schouten) bracket of polyvectors:
///   [X,Y] = sum_i dX/dxv_i dY/dx_i + (-1)^deg(X) dX/dx_i dY/dxv_i.
TensorField schouten(const TensorField& x, const TensorField& y);

/// Poisson bracket of momentum realizations of symmetric tensors.
TensorField poisson(const TensorField& f, const TensorField& g);

/// Identifications along vol: an n-form with twist a is a scalar of twist
/// a+1; an n-polyvector with twist a is a scalar of twist a-1; a p-form of
/// twist a is an (n-p)-polyvector of twist a+1.
TensorField top_form_to_scalar(const TensorField& s);
TensorField scalar_to_top_form(const TensorField& s);
TensorField form_to_polyvector_rep(const TensorField& s);
TensorField polyvector_to_form_rep(const TensorField& s);

/// Trace of a vector-valued form and the traceless projection (defined for
/// form degree k with n - k + 1 != 0).
TensorField vvform_trace(const TensorField& s);
TensorField vvform_traceless(const TensorField& s);
TensorField wedge_vvform(const TensorField& form, const TensorField& vv);

/// The vector field carried by a vv-0-form / degree-1 polyvector.
VectorFieldPoly as_vector_field(const TensorField& s);
TensorField vector_field_to_polyvector(const VectorFieldPoly& xi, const Rational& twist = 0);

}  // namespace bilops

#endif
