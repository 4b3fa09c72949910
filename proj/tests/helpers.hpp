#ifndef BILOPS_TESTS_HELPERS_HPP
#define BILOPS_TESTS_HELPERS_HPP

#include <random>
#include <vector>

#include "bilops/linalg.hpp"

namespace bilops::testing {

inline std::mt19937& rng() {
    static std::mt19937 gen(20240811u);
    return gen;
}

inline int rand_int(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng());
}

inline Rational rand_rational(int num_range = 6, int max_den = 3) {
    Rational q(rand_int(-num_range, num_range), rand_int(1, max_den));
    q.canonicalize();
    return q;
}

// Independent dense Gauss-Jordan elimination used as the oracle for rank and
// kernel dimension.  Deliberately plain: no pivot scaling tricks shared with
// the library implementation.
inline int oracle_rank(std::vector<std::vector<Rational>> a) {
    if (a.empty()) return 0;
    size_t rows = a.size(), cols = a[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c] / a[r][c];
            for (size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

inline std::vector<std::vector<Rational>> rand_matrix(int rows, int cols) {
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
    for (auto& row : a)
        for (auto& v : row) v = rand_int(0, 2) == 0 ? Rational(0) : rand_rational(4, 2);
    return a;
}

}  // namespace bilops::testing

#endif
