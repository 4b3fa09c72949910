#ifndef BILOPS_VERIFIER_HPP
#define BILOPS_VERIFIER_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bilops/catalog.hpp"
#include "bilops/linalg.hpp"

namespace bilops {

using BilinearMap = std::function<TensorField(const TensorField&, const TensorField&)>;

/// The invariance defect L_xi B(s1,s2) - B(L_xi s1, s2) - B(s1, L_xi s2).
struct Residual {
    TensorField field;
    FieldMonomial xi;
    TensorField s1, s2;

    bool vanishes() const { return field.is_zero_within_validity(); }
};

Residual residual(const BilinearMap& op, const FieldMonomial& xi, const TensorField& s1,
                  const TensorField& s2);
Residual residual(const OpId& op, const FieldMonomial& xi, const TensorField& s1,
                  const TensorField& s2);

/// All monomial fields x^a d_b with |a| <= dmax, in deterministic order.
std::vector<FieldMonomial> monomial_fields(int n, int dmax);

/// Basis fields of a shape: one per (fiber key, x-monomial of degree <= K).
std::vector<TensorField> basis_fields(int n, const FieldShape& shape, int K);

struct VerifyResult {
    bool pass = true;
    long tests_run = 0;
    std::optional<Residual> witness;
};

/// Exhaustive residual check over all monomial fields with |a| <= dmax and
/// all basis-field input pairs of coefficient degree <= K.  Deterministic
/// witness selection (first failing test in enumeration order); evaluation
/// may fan out over `parallelism` threads.
VerifyResult verify_map(const BilinearMap& op, int n, const FieldShape& in1,
                        const FieldShape& in2, int dmax = 3, int K = 3,
                        int parallelism = 1);

/// Catalog verification over the operator's default instances at dimension n.
VerifyResult verify(const OpId& op, int n, int dmax = 3, int K = 3, int parallelism = 1);

/// A finitely parametrized family sum_r c_r T_r of bilinear operator terms.
struct OpTemplate {
    std::vector<std::string> labels;
    std::vector<BilinearMap> terms;
    FieldShape in1, in2;
};

/// The order-d differential monomial template on a density pair of the line:
/// terms f^(i) g^(d-i) vol^(a+b+d) for i = d..0.
OpTemplate density_template(int d, const Rational& a, const Rational& b);

/// The two arms of the first-order family on untwisted forms.
OpTemplate p5_template(int n, int p, int q);

/// Exact basis of {c : sum_r c_r T_r is invariant}, via the kernel of the
/// stacked residual-coefficient matrix.
std::vector<std::vector<Rational>> fit_coefficients(const OpTemplate& tpl, int n,
                                                    int dmax = 3, int K = 3,
                                                    int parallelism = 1);

}  // namespace bilops

#endif
