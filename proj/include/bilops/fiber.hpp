#ifndef BILOPS_FIBER_HPP
#define BILOPS_FIBER_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bilops/rational.hpp"

namespace bilops {

/// gl(n) weight (l_1,...,l_n).
using Weight = std::vector<Rational>;

Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
std::string weight_str(const Weight& w);

/// sl(2)-weight l_1 - l_2 of an n=2 gl-weight.
Rational sl2_weight(const Weight& w);

/// Ambient basis monomial of a tensor-power realization: slot values for
/// p contravariant slots followed by q covariant slots.
using TensorMonomial = std::vector<int>;
using TensorExpr = std::map<TensorMonomial, Rational>;

/// An irreducible gl(n)-module in an explicit basis with exact generator
/// action tables.  n in {1,2} uses the weight-basis realization
///   x_+ v_i = (lambda-i+1) v_{i-1},  x_- v_i = (i+1) v_{i+1},
///   h-eigenvalues (l_1-i, l_2+i);
/// n >= 1 may instead use a tensor-power realization generated from a
/// highest-weight vector by the lowering operators.
class IrredFiber {
  public:
    /// Weight-basis mode.  For n=2 with lambda in Z+, truncation is forced
    /// to lambda; otherwise the basis is v_0..v_truncation and lowering past
    /// the end is a hard error.
    static IrredFiber weight_basis(int n, const Weight& top_weight, int truncation);

    /// Tensor-power mode: p contravariant and q covariant slots, density
    /// twist, module generated from hw by lowering and echelonized.
    /// Throws ConfigError naming the failing raising operator if hw is not
    /// highest.
    static IrredFiber tensor_realization(int n, int p, int q, const Rational& twist,
                                         const TensorExpr& hw);

    int n() const { return n_; }
    int dim() const { return static_cast<int>(weights_.size()); }
    const Weight& top_weight() const { return top_weight_; }
    int truncation() const { return truncation_; }
    bool finite_complete() const { return finite_; }
    const Weight& weight_of(int idx) const;

    /// Image of basis vector idx under E^i_j (0-based), as (index, coeff)
    /// pairs.  Throws TruncationError if the image leaves the truncated
    /// basis of a non-dominant weight-basis module.
    std::vector<std::pair<int, Rational>> act(int i, int j, int idx) const;

  private:
    IrredFiber() = default;

    int n_ = 1;
    Weight top_weight_;
    int truncation_ = 0;
    bool finite_ = true;  // basis spans the whole module
    std::vector<Weight> weights_;
    bool weight_mode_ = true;
    // Dense action tables for tensor mode: table_[i*n+j][idx] -> sparse image.
    std::vector<std::vector<std::vector<std::pair<int, Rational>>>> table_;
};

/// make_fiber of the weight-basis modes (n = 1 needs no truncation).
IrredFiber make_fiber(int n, const Weight& top_weight, int truncation);

/// Sparse fiber vector: index -> coefficient.
using FiberVec = std::map<int, Rational>;

/// Image of a fiber vector under a named generator: "x+", "x-", "h1".."hn",
/// or E^i_j given by the index pair.
FiberVec act_generator(const IrredFiber& f, int i, int j, const FiberVec& v);
FiberVec act_generator(const IrredFiber& f, const std::string& name, const FiberVec& v);

/// Weyl dimension of the gl(n) irreducible with dominant weight w.
Rational weyl_dimension(const Weight& w);

}  // namespace bilops

#endif
