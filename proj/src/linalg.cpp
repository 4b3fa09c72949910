#include "bilops/linalg.hpp"

namespace bilops {

void SparseMat::set(int r, int c, const Rational& v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw ConfigError("matrix index out of range");
    if (v == 0)
        entries.erase({r, c});
    else
        entries[{r, c}] = v;
}

void SparseMat::add(int r, int c, const Rational& v) { set(r, c, get(r, c) + v); }

Rational SparseMat::get(int r, int c) const {
    auto it = entries.find({r, c});
    return it == entries.end() ? Rational(0) : it->second;
}

std::vector<std::vector<Rational>> SparseMat::dense() const {
    std::vector<std::vector<Rational>> d(rows, std::vector<Rational>(cols, Rational(0)));
    for (const auto& [rc, v] : entries) d[rc.first][rc.second] = v;
    return d;
}

SparseMat SparseMat::from_dense(const std::vector<std::vector<Rational>>& d) {
    SparseMat m(static_cast<int>(d.size()), d.empty() ? 0 : static_cast<int>(d[0].size()));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            if (d[r][c] != 0) m.entries[{r, c}] = d[r][c];
    return m;
}

namespace {

// Scale a row to primitive integer form with positive leading coefficient,
// to keep intermediate entries small during forward elimination.
void make_row_primitive(std::vector<Rational>& row) {
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& v : row) {
        if (v == 0) continue;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den().get_mpz_t());
    }
    if (num_gcd == 0) return;
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    for (auto& v : row) v *= scale;
}

}  // namespace

std::vector<int> rref(std::vector<std::vector<Rational>>& a) {
    std::vector<int> pivots;
    int nrows = static_cast<int>(a.size());
    int ncols = nrows ? static_cast<int>(a[0].size()) : 0;
    for (auto& row : a) make_row_primitive(row);
    int r = 0;
    for (int c = 0; c < ncols && r < nrows; ++c) {
        int pr = -1;
        for (int i = r; i < nrows; ++i)
            if (a[i][c] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(a[r], a[pr]);
        for (int i = r + 1; i < nrows; ++i) {
            if (a[i][c] == 0) continue;
            Rational f = a[i][c] / a[r][c];
            for (int j = c; j < ncols; ++j) a[i][j] -= f * a[r][j];
            make_row_primitive(a[i]);
        }
        pivots.push_back(c);
        ++r;
    }
    // Back-substitution to reduced form.
    for (int k = static_cast<int>(pivots.size()) - 1; k >= 0; --k) {
        int c = pivots[k];
        Rational inv = 1 / a[k][c];
        for (int j = c; j < ncols; ++j) a[k][j] *= inv;
        for (int i = 0; i < k; ++i) {
            if (a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (int j = c; j < ncols; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return pivots;
}

std::vector<std::vector<Rational>> kernel_basis(const SparseMat& m) {
    auto a = m.dense();
    auto pivots = rref(a);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols, Rational(0));
        v[f] = 1;
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a[k][f];
        int first = 0;
        while (v[first] == 0) ++first;
        Rational inv = 1 / v[first];
        for (auto& x : v) x *= inv;
        basis.push_back(std::move(v));
    }
    return basis;
}

int rank(const SparseMat& m) {
    auto a = m.dense();
    return static_cast<int>(rref(a).size());
}

bool matvec_is_zero(const SparseMat& m, const std::vector<Rational>& v) {
    if (static_cast<int>(v.size()) != m.cols) throw ConfigError("matvec size mismatch");
    std::vector<Rational> out(m.rows, Rational(0));
    for (const auto& [rc, val] : m.entries) out[rc.first] += val * v[rc.second];
    for (const auto& x : out)
        if (x != 0) return false;
    return true;
}

}  // namespace bilops
