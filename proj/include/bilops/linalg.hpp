#ifndef BILOPS_LINALG_HPP
#define BILOPS_LINALG_HPP

#include <map>
#include <utility>
#include <vector>

#include "bilops/rational.hpp"

namespace bilops {

/// Sparse exact matrix over the rationals.  No stored zeros.
struct SparseMat {
    int rows = 0;
    int cols = 0;
    std::map<std::pair<int, int>, Rational> entries;

    SparseMat() = default;
    SparseMat(int r, int c) : rows(r), cols(c) {}

    void set(int r, int c, const Rational& v);
    void add(int r, int c, const Rational& v);
    Rational get(int r, int c) const;
    std::vector<std::vector<Rational>> dense() const;
    static SparseMat from_dense(const std::vector<std::vector<Rational>>& d);
};

/// Basis of {v : Mv = 0}.  Each vector is normalized so its first nonzero
/// coordinate is 1; vectors are ordered by their free column ascending.
std::vector<std::vector<Rational>> kernel_basis(const SparseMat& m);

int rank(const SparseMat& m);

/// Reduced row echelon form of a dense matrix (in place); returns pivot
/// columns in ascending order.  Forward pass keeps rows integer-primitive.
std::vector<int> rref(std::vector<std::vector<Rational>>& a);

bool matvec_is_zero(const SparseMat& m, const std::vector<Rational>& v);

}  // namespace bilops

#endif
