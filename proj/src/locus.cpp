#include "bilops/locus.hpp"

#include <algorithm>
#include <set>

#include "bilops/linalg.hpp"

namespace bilops {

std::string LocusLine::str() const {
    switch (family) {
        case L: return "l=" + to_string(c);
        case M: return "m=" + to_string(c);
        default: return "l+m=" + to_string(c);
    }
}

bool LocusLine::contains(const Rational& l, const Rational& m) const {
    switch (family) {
        case L: return l == c;
        case M: return m == c;
        default: return l + m == c;
    }
}

int generic_rank(const std::vector<std::vector<ParamPoly>>& m) {
    std::vector<std::vector<ParamPoly>> a = m;
    size_t nrows = a.size();
    if (nrows == 0) return 0;
    size_t ncols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < nrows; ++c) {
        size_t pr = r;
        while (pr < nrows && a[pr][c].is_zero()) ++pr;
        if (pr == nrows) continue;
        std::swap(a[r], a[pr]);
        for (size_t i = r + 1; i < nrows; ++i) {
            if (a[i][c].is_zero()) continue;
            for (size_t j = c + 1; j < ncols; ++j)
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
            a[i][c] = ParamPoly(a[i][c].vars());
            // Strip a scalar content common to the whole row.
            Rational row_content = 0;
            for (size_t j = c + 1; j < ncols; ++j) {
                Rational cont = a[i][j].content();
                if (cont == 0) continue;
                if (row_content == 0) {
                    row_content = cont;
                } else {
                    mpz_class g;
                    mpz_gcd(g.get_mpz_t(), row_content.get_num().get_mpz_t(),
                            cont.get_num().get_mpz_t());
                    mpz_class lc;
                    mpz_lcm(lc.get_mpz_t(), row_content.get_den().get_mpz_t(),
                            cont.get_den().get_mpz_t());
                    row_content = Rational(g, lc);
                    row_content.canonicalize();
                }
            }
            if (row_content != 0 && row_content != 1)
                for (size_t j = c + 1; j < ncols; ++j)
                    a[i][j] = a[i][j] * (Rational(1) / row_content);
        }
        ++r;
    }
    return static_cast<int>(r);
}

namespace {

constexpr int kVarL = 0;
constexpr int kVarM = 1;

using Matrix = std::vector<std::vector<ParamPoly>>;

Matrix substitute_line(const Matrix& m, const LocusLine& line) {
    Matrix out = m;
    ParamPoly cpoly = ParamPoly::constant(line.c, m[0][0].vars());
    ParamPoly repl =
        line.family == LocusLine::LPlusM
            ? cpoly - ParamPoly::variable(kVarM, m[0][0].vars())
            : cpoly;
    int var = line.family == LocusLine::M ? kVarM : kVarL;
    for (auto& row : out)
        for (auto& e : row) e = e.substitute(var, repl);
    return out;
}

int rank_at_point(const Matrix& m, const Rational& l, const Rational& mm) {
    std::vector<std::vector<Rational>> d(m.size(), std::vector<Rational>(m[0].size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[0].size(); ++j) d[i][j] = m[i][j].eval({l, mm});
    return rank(SparseMat::from_dense(d));
}

// Next k-subset of {0..n-1} in lexicographic order; false when exhausted.
bool next_combination(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

ParamPoly minor_poly(const Matrix& m, const std::vector<int>& rows,
                     const std::vector<int>& cols) {
    Matrix sub(rows.size(), std::vector<ParamPoly>(cols.size(), ParamPoly(m[0][0].vars())));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) sub[i][j] = m[rows[i]][cols[j]];
    return det_bareiss(sub);
}

// Candidate constants c for which p vanishes identically on the family line.
std::set<Rational> line_candidates(const ParamPoly& p, LocusLine::Family family) {
    ParamPoly q = p;
    if (family == LocusLine::LPlusM) {
        // Rewrite in s = l+m: substitute l -> s - m, with s stored in the l slot.
        q = p.substitute(kVarL, ParamPoly::variable(kVarL, p.vars()) -
                                    ParamPoly::variable(kVarM, p.vars()));
    }
    int cvar = family == LocusLine::M ? kVarM : kVarL;
    int ovar = cvar == kVarL ? kVarM : kVarL;
    ParamPoly g(p.vars());
    for (const auto& coeff : q.coeffs_in(ovar)) {
        if (coeff.is_zero()) continue;
        g = g.is_zero() ? coeff : gcd_univariate(g, coeff, cvar);
        if (g.is_constant()) break;
    }
    if (g.is_zero() || g.is_constant()) return {};
    return rational_roots(g, cvar);
}

// Divide out every found line factor.
ParamPoly strip_lines(ParamPoly p, const std::vector<LocusLine>& lines) {
    for (const auto& line : lines) {
        ParamPoly factor(p.vars());
        switch (line.family) {
            case LocusLine::L:
                factor = ParamPoly::variable(kVarL, p.vars()) -
                         ParamPoly::constant(line.c, p.vars());
                break;
            case LocusLine::M:
                factor = ParamPoly::variable(kVarM, p.vars()) -
                         ParamPoly::constant(line.c, p.vars());
                break;
            case LocusLine::LPlusM:
                factor = ParamPoly::variable(kVarL, p.vars()) +
                         ParamPoly::variable(kVarM, p.vars()) -
                         ParamPoly::constant(line.c, p.vars());
                break;
        }
        while (!p.is_zero() && factor.divides_into(p)) p = p.exact_divide(factor);
    }
    return p;
}

ParamPoly specialize_l(const ParamPoly& p, const Rational& l0) {
    return p.substitute(kVarL, ParamPoly::constant(l0, p.vars()));
}

}  // namespace

LocusDescription minor_vanishing_locus(const Matrix& m, int k) {
    if (m.empty() || m[0].empty()) throw ConfigError("empty matrix");
    if (m[0][0].nvars() != 2)
        throw ConfigError("unsupported: minor_vanishing_locus needs exactly 2 parameters");
    int nrows = static_cast<int>(m.size());
    int ncols = static_cast<int>(m[0].size());
    if (nrows > 12 || ncols > 12) throw ConfigError("matrix dimensions exceed 12");
    for (const auto& row : m)
        for (const auto& e : row)
            if (e.total_degree() > 3) throw ConfigError("entry degree exceeds 3");
    if (k < 1) throw ConfigError("rank bound must be positive");

    LocusDescription out;
    if (k > std::min(nrows, ncols) || generic_rank(m) < k) {
        out.whole_plane = true;
        return out;
    }

    // A deterministic sample of nonzero k x k minors (lexicographic row/column
    // subsets).  Any subset gives complete candidate sets; certification below
    // goes through exact rank evaluations of the full matrix.
    std::vector<ParamPoly> minors;
    {
        const size_t kMaxMinors = 8;
        std::vector<int> rows(k), cols(k);
        for (int i = 0; i < k; ++i) rows[i] = i;
        bool rows_left = true;
        while (rows_left && minors.size() < kMaxMinors) {
            for (int i = 0; i < k; ++i) cols[i] = i;
            bool cols_left = true;
            while (cols_left && minors.size() < kMaxMinors) {
                ParamPoly d = minor_poly(m, rows, cols);
                if (!d.is_zero()) minors.push_back(d);
                cols_left = next_combination(cols, ncols);
            }
            rows_left = next_combination(rows, nrows);
        }
    }
    // generic_rank >= k guarantees some nonzero minor exists.
    if (minors.empty()) throw ConfigError("internal: no nonzero minor found");

    // Lines: candidates from the first nonzero minor, certified by the
    // generic rank along the substituted line.
    for (auto family : {LocusLine::L, LocusLine::M, LocusLine::LPlusM}) {
        for (const auto& c : line_candidates(minors.front(), family)) {
            LocusLine line{family, c};
            if (generic_rank(substitute_line(m, line)) < k) out.lines.push_back(line);
        }
    }
    std::sort(out.lines.begin(), out.lines.end());

    // Isolated points: work with line-stripped minors.
    std::vector<ParamPoly> reduced;
    for (const auto& p : minors) {
        ParamPoly q = strip_lines(p, out.lines);
        if (!q.is_constant()) reduced.push_back(q);
    }
    if (reduced.empty()) return out;

    std::vector<ParamPoly> basis = reduced;
    if (reduced.size() == 1) {
        // A single curve: its only isolated rational points are singular ones.
        basis.push_back(reduced[0].derivative(kVarL));
        basis.push_back(reduced[0].derivative(kVarM));
        out.residual.push_back(reduced[0].str());
    }

    // Projection candidates: gcd of resultants in m over pairs plus a few
    // deterministic combinations (prunes extraneous factors).
    ParamPoly proj(m[0][0].vars());
    auto fold_resultant = [&](const ParamPoly& a, const ParamPoly& b) {
        ParamPoly r = resultant(a, b, kVarM);
        if (r.is_zero()) return;
        proj = proj.is_zero() ? r : gcd_univariate(proj, r, kVarL);
    };
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) fold_resultant(basis[i], basis[j]);
    if (basis.size() >= 3) {
        for (int w : {1, 2, 3}) {
            ParamPoly combo(m[0][0].vars());
            Rational weight = 1;
            for (const auto& b : basis) {
                combo = combo + b * weight;
                weight *= w + 1;
            }
            fold_resultant(basis[0], combo);
        }
    }
    if (proj.is_zero()) {
        // Every pair shares a curve; report the defining polynomials.
        for (const auto& p : reduced) out.residual.push_back(p.str());
        return out;
    }

    proj = squarefree_part(proj, kVarL);
    std::set<Rational> l_candidates =
        proj.is_constant() ? std::set<Rational>{} : rational_roots(proj, kVarL);
    ParamPoly l_resid = proj;
    for (const auto& l0 : l_candidates) {
        ParamPoly lin = ParamPoly::variable(kVarL, proj.vars()) -
                        ParamPoly::constant(l0, proj.vars());
        while (lin.divides_into(l_resid)) l_resid = l_resid.exact_divide(lin);

        ParamPoly g(proj.vars());
        for (const auto& p : reduced) {
            ParamPoly s = specialize_l(p, l0);
            if (s.is_zero()) continue;
            g = g.is_zero() ? s : gcd_univariate(g, s, kVarM);
            if (g.is_constant()) break;
        }
        if (g.is_zero() || g.is_constant()) continue;
        std::set<Rational> ms = rational_roots(g, kVarM);
        ParamPoly m_resid = squarefree_part(g, kVarM);
        for (const auto& m0 : ms) {
            ParamPoly lin_m = ParamPoly::variable(kVarM, proj.vars()) -
                              ParamPoly::constant(m0, proj.vars());
            while (lin_m.divides_into(m_resid)) m_resid = m_resid.exact_divide(lin_m);
            bool on_line = std::any_of(out.lines.begin(), out.lines.end(),
                                       [&](const LocusLine& li) { return li.contains(l0, m0); });
            if (!on_line && rank_at_point(m, l0, m0) < k) out.points.emplace_back(l0, m0);
        }
        if (!m_resid.is_constant())
            out.residual.push_back("l=" + to_string(l0) + ", " + m_resid.str());
    }
    if (!l_resid.is_constant()) out.residual.push_back(l_resid.str());

    std::sort(out.points.begin(), out.points.end());
    return out;
}

}  // namespace bilops
