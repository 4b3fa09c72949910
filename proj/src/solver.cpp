#include "bilops/solver.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

namespace bilops {

std::vector<FieldMonomial> constraint_fields(int n, GeneratorSet gen) {
    std::vector<FieldMonomial> out;
    if (n == 1) {
        out.push_back({{2}, 0});
        out.push_back({{3}, 0});
        return out;
    }
    if (gen == GeneratorSet::Minimal) {
        if (n != 2) throw ConfigError("minimal generator set is defined for n in {1,2}");
        out.push_back({{1, 0}, 1});  // x1 d2
        out.push_back({{0, 2}, 0});  // x2^2 d1
        out.push_back({{0, 2}, 1});  // x2^2 d2
        return out;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<int> a(n, 0);
            a[i] = 1;
            out.push_back({a, j});
        }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                std::vector<int> a(n, 0);
                a[i] += 1;
                a[j] += 1;
                out.push_back({a, k});
            }
    return out;
}

SingularSystem assemble_system(const IrredFiber& f1, const IrredFiber& f2, int d,
                               const Weight& nu, GeneratorSet gen) {
    if (f1.n() != f2.n()) throw ConfigError("fibers over different n");
    SingularSystem sys;
    sys.n = f1.n();
    sys.d = d;
    sys.nu = nu;
    sys.fields = constraint_fields(sys.n, gen);
    sys.columns = jet_basis(f1, f2, d, nu);

    // Row index space: per constraint field, the key basis of the image
    // grading (degree d - |a| + 1, weight nu + wt(xi)).
    struct Block {
        std::map<JetKey, int, JetKeyLess> row_of;
        int offset = 0;
    };
    std::vector<Block> blocks(sys.fields.size());
    int nrows = 0;
    for (size_t fidx = 0; fidx < sys.fields.size(); ++fidx) {
        const auto& xi = sys.fields[fidx];
        int dout = d - xi.coeff_degree() + 1;
        blocks[fidx].offset = nrows;
        if (dout < 0) continue;
        Weight wout = nu + xi.weight();
        for (const auto& k : jet_basis(f1, f2, dout, wout)) {
            blocks[fidx].row_of.emplace(k, nrows);
            ++nrows;
        }
    }
    sys.matrix = SparseMat(nrows, static_cast<int>(sys.columns.size()));
    for (size_t col = 0; col < sys.columns.size(); ++col) {
        JetVector unit;
        unit.n = sys.n;
        unit.degree = d;
        unit.add(sys.columns[col], 1);
        for (size_t fidx = 0; fidx < sys.fields.size(); ++fidx) {
            JetVector img = act_field(sys.fields[fidx], unit, f1, f2);
            for (const auto& [k, c] : img.terms) {
                auto it = blocks[fidx].row_of.find(k);
                if (it == blocks[fidx].row_of.end())
                    throw ConfigError("internal: image key outside enumerated grading");
                sys.matrix.add(it->second, static_cast<int>(col), c);
            }
        }
    }
    return sys;
}

std::vector<JetVector> singular_vectors(const IrredFiber& f1, const IrredFiber& f2, int d,
                                        const Weight& nu, GeneratorSet gen) {
    SingularSystem sys = assemble_system(f1, f2, d, nu, gen);
    std::vector<JetVector> out;
    for (const auto& coords : kernel_basis(sys.matrix)) {
        JetVector v;
        v.n = sys.n;
        v.degree = d;
        for (size_t c = 0; c < coords.size(); ++c) v.add(sys.columns[c], coords[c]);
        out.push_back(v.normalized());
    }
    return out;
}

std::vector<Weight> admissible_nu(const IrredFiber& f1, const IrredFiber& f2, int d,
                                  NuPolicy policy) {
    int n = f1.n();
    if (n == 1) return {{f1.top_weight()[0] + f2.top_weight()[0] - d}};
    if (policy == NuPolicy::Balanced) {
        if (n != 2) throw ConfigError("balanced nu policy is defined for n in {1,2}");
        Weight top = f1.top_weight() + f2.top_weight();
        std::vector<Weight> out;
        for (int s = 0; s <= d; ++s)
            out.push_back({top[0] - s, top[1] + s - d});
        return out;
    }
    std::set<Weight> seen;
    std::vector<Weight> out;
    for (const auto& k : jet_basis(f1, f2, d))
        if (seen.insert(key_weight(k, f1, f2)).second) out.push_back(key_weight(k, f1, f2));
    std::sort(out.begin(), out.end());
    return out;
}

int default_truncation(int d) { return 2 * d + 2; }

namespace {

IrredFiber fiber_for_scan(int n, const Weight& w, int d, int truncation_override) {
    int t = truncation_override >= 0 ? truncation_override : default_truncation(d);
    return make_fiber(n, w, t);
}

}  // namespace

ScanReport scan(int n, int d, const std::vector<std::pair<Weight, Weight>>& grid,
                NuPolicy policy, GeneratorSet gen, int truncation_override, int parallelism) {
    ScanReport report;
    report.n = n;
    report.d = d;
    report.policy = policy;
    report.gen = gen;
    report.points.resize(grid.size());

    auto solve_point = [&](size_t idx) {
        ScanPoint& pt = report.points[idx];
        pt.w1 = grid[idx].first;
        pt.w2 = grid[idx].second;
        try {
            IrredFiber f1 = fiber_for_scan(n, pt.w1, d, truncation_override);
            IrredFiber f2 = fiber_for_scan(n, pt.w2, d, truncation_override);
            if (policy == NuPolicy::All && !(f1.finite_complete() && f2.finite_complete()))
                throw ConfigError(
                    "nu policy 'all' needs finite fibers; use 'balanced' for "
                    "non-dominant weights");
            for (const auto& nu : admissible_nu(f1, f2, d, policy)) {
                ScanEntry e;
                e.nu = nu;
                auto basis = singular_vectors(f1, f2, d, nu, gen);
                e.kernel_dim = static_cast<int>(basis.size());
                if (e.kernel_dim > 0) e.basis = std::move(basis);
                pt.entries.push_back(std::move(e));
            }
        } catch (const std::exception& ex) {
            pt.error = ex.what();
        }
    };

    int jobs = std::max(1, parallelism);
    if (jobs == 1 || grid.size() <= 1) {
        for (size_t i = 0; i < grid.size(); ++i) solve_point(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> workers;
        int nw = std::min<int>(jobs, static_cast<int>(grid.size()));
        workers.reserve(nw);
        for (int t = 0; t < nw; ++t)
            workers.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
                    solve_point(i);
            });
        for (auto& w : workers) w.join();
    }
    return report;
}

std::vector<std::vector<ParamPoly>> n1_parametric_matrix(int d) {
    if (d < 1) throw ConfigError("degree must be >= 1");
    std::vector<std::string> vars = {"l", "m"};
    ParamPoly l = ParamPoly::variable(0, vars);
    ParamPoly m = ParamPoly::variable(1, vars);
    std::vector<std::vector<ParamPoly>> rows;
    // Rows of x^k d on f = sum_p c_p/(p!(d-p)!) d^p v ( d^(d-p) w, written in
    // the same normalization on the output side.  The output key with first
    // slot power i receives (k*l - i) c_(i+k-1) + (k*m - (d-i) + k-1) c_i;
    // for k=2 this is the (2l-i) c_(i+1) + (2m-j+1) c_i recurrence.
    for (int k : {2, 3})
        for (int i = 0; i + k - 1 <= d; ++i) {
            std::vector<ParamPoly> row(d + 1, ParamPoly(vars));
            row[i + k - 1] = l * Rational(k) + ParamPoly::constant(Rational(-i), vars);
            row[i] = row[i] + m * Rational(k) +
                     ParamPoly::constant(Rational(-(d - i) + k - 1), vars);
            rows.push_back(row);
        }
    return rows;
}

Rational delta(int i, int d, const Rational& l, const Rational& m) {
    if (i < 1 || i > d - 1) throw ConfigError("delta index out of range");
    Rational j = d - i;
    return (2 * l - i) * (2 * l - i + 1) * (3 * m - j + 1) +
           (2 * m - j) * (2 * m - j + 1) * (3 * l - i + 1);
}

N1Locus n1_parametric_locus(int d) {
    if (d < 1 || d > 6) throw ConfigError("n1_parametric_locus supports 1 <= d <= 6");
    N1Locus out;
    out.d = d;
    out.locus = minor_vanishing_locus(n1_parametric_matrix(d), d + 1);
    for (const auto& [l0, m0] : out.locus.points) {
        IrredFiber f1 = make_fiber(1, {l0}, 0);
        IrredFiber f2 = make_fiber(1, {m0}, 0);
        out.point_kernels.push_back(
            singular_vectors(f1, f2, d, {l0 + m0 - d}, GeneratorSet::Full));
    }
    return out;
}

}  // namespace bilops
