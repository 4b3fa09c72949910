#include "bilops/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

namespace bilops {

Residual residual(const BilinearMap& op, const FieldMonomial& xi, const TensorField& s1,
                  const TensorField& s2) {
    TensorField lhs = lie_derivative(xi, op(s1, s2));
    Residual out;
    out.field = std::move(lhs);
    out.field.add_scaled(op(lie_derivative(xi, s1), s2), -1);
    out.field.add_scaled(op(s1, lie_derivative(xi, s2)), -1);
    out.xi = xi;
    out.s1 = s1;
    out.s2 = s2;
    return out;
}

Residual residual(const OpId& op, const FieldMonomial& xi, const TensorField& s1,
                  const TensorField& s2) {
    return residual(
        [&op](const TensorField& a, const TensorField& b) { return apply(op, a, b); }, xi,
        s1, s2);
}

namespace {

void enumerate_exponents(int n, int maxdeg, std::vector<std::vector<int>>& out) {
    // all e with |e| <= maxdeg, ordered by total degree then lex
    std::vector<int> cur(n, 0);
    for (int total = 0; total <= maxdeg; ++total) {
        std::vector<std::vector<int>> level;
        std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == n - 1) {
                cur[pos] = left;
                level.push_back(cur);
                return;
            }
            for (int k = left; k >= 0; --k) {
                cur[pos] = k;
                rec(pos + 1, left - k);
            }
        };
        rec(0, total);
        for (auto& e : level) out.push_back(std::move(e));
    }
}

}  // namespace

std::vector<FieldMonomial> monomial_fields(int n, int dmax) {
    std::vector<std::vector<int>> exps;
    enumerate_exponents(n, dmax, exps);
    std::vector<FieldMonomial> out;
    for (const auto& e : exps)
        for (int b = 0; b < n; ++b) out.push_back({e, b});
    return out;
}

std::vector<TensorField> basis_fields(int n, const FieldShape& shape, int K) {
    std::vector<std::vector<int>> exps;
    enumerate_exponents(n, K, exps);
    std::vector<FiberKey> keys;
    switch (shape.kind) {
        case Kind::Scalar:
            keys.push_back(FiberKey{});
            break;
        case Kind::Form:
        case Kind::Polyvector:
            for (unsigned mask = 0; mask < (1u << n); ++mask)
                if (__builtin_popcount(mask) == shape.degree) keys.push_back(FiberKey{mask, {}, -1});
            break;
        case Kind::Symtensor: {
            std::vector<std::vector<int>> moms;
            std::vector<int> cur(n, 0);
            std::function<void(int, int)> rec = [&](int pos, int left) {
                if (pos == n - 1) {
                    cur[pos] = left;
                    moms.push_back(cur);
                    return;
                }
                for (int k = left; k >= 0; --k) {
                    cur[pos] = k;
                    rec(pos + 1, left - k);
                }
            };
            rec(0, shape.degree);
            for (const auto& m : moms) keys.push_back(FiberKey{0, m, -1});
            break;
        }
        case Kind::VVForm:
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                if (__builtin_popcount(mask) != shape.degree) continue;
                for (int b = 0; b < n; ++b) keys.push_back(FiberKey{mask, {}, b});
            }
            break;
    }
    std::vector<TensorField> out;
    for (const auto& fk : keys)
        for (const auto& e : exps) {
            TensorField f(shape.kind, shape.degree, n, shape.twist);
            f.add(fk, e, 1);
            out.push_back(std::move(f));
        }
    return out;
}

VerifyResult verify_map(const BilinearMap& op, int n, const FieldShape& in1,
                        const FieldShape& in2, int dmax, int K, int parallelism) {
    if (dmax < 2) throw ConfigError("dmax must be >= 2");
    auto fields = monomial_fields(n, dmax);
    auto b1 = basis_fields(n, in1, K);
    auto b2 = basis_fields(n, in2, K);

    struct Task {
        size_t f, i, j;
    };
    std::vector<Task> tasks;
    tasks.reserve(fields.size() * b1.size() * b2.size());
    for (size_t f = 0; f < fields.size(); ++f)
        for (size_t i = 0; i < b1.size(); ++i)
            for (size_t j = 0; j < b2.size(); ++j) tasks.push_back({f, i, j});

    std::atomic<size_t> next{0};
    std::atomic<size_t> first_fail{tasks.size()};
    std::exception_ptr error;
    std::mutex error_mutex;
    int jobs = std::max(1, parallelism);
    auto worker = [&] {
        try {
            for (size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1)) {
                if (t > first_fail.load()) continue;
                const Task& task = tasks[t];
                Residual r = residual(op, fields[task.f], b1[task.i], b2[task.j]);
                if (!r.vanishes()) {
                    size_t cur = first_fail.load();
                    while (t < cur && !first_fail.compare_exchange_weak(cur, t)) {
                    }
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
            first_fail.store(0);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    VerifyResult out;
    out.tests_run = static_cast<long>(tasks.size());
    size_t fail = first_fail.load();
    if (fail < tasks.size()) {
        out.pass = false;
        const Task& task = tasks[fail];
        out.witness = residual(op, fields[task.f], b1[task.i], b2[task.j]);
    }
    return out;
}

VerifyResult verify(const OpId& op, int n, int dmax, int K, int parallelism) {
    auto instances = default_instances(op.tag, n);
    if (instances.empty())
        throw ConfigError(op_name(op.tag) + " has no test instances at n=" +
                          std::to_string(n));
    BilinearMap map = [&op](const TensorField& a, const TensorField& b) {
        return apply(op, a, b);
    };
    VerifyResult total;
    for (const auto& inst : instances) {
        VerifyResult r = verify_map(map, n, inst.in1, inst.in2, dmax, K, parallelism);
        total.tests_run += r.tests_run;
        if (!r.pass && total.pass) {
            total.pass = false;
            total.witness = r.witness;
        }
    }
    return total;
}

OpTemplate density_template(int d, const Rational& a, const Rational& b) {
    OpTemplate tpl;
    tpl.in1 = {Kind::Scalar, 0, a};
    tpl.in2 = {Kind::Scalar, 0, b};
    Rational out_twist = a + b + d;
    for (int i = d; i >= 0; --i) {
        tpl.labels.push_back("f^(" + std::to_string(i) + ") g^(" + std::to_string(d - i) +
                             ")");
        tpl.terms.push_back([i, d, out_twist](const TensorField& f, const TensorField& g) {
            if (f.n() != 1 || g.n() != 1)
                throw SignatureError("density template is defined on the line");
            auto deriv = [](const TensorField& s, int k) {
                Poly p;
                for (const auto& [key, c] : s.coeffs()) p[key.second] = c;
                for (int t = 0; t < k; ++t) {
                    Poly q;
                    for (const auto& [e, c] : p)
                        if (e[0] > 0) q[{e[0] - 1}] = c * e[0];
                    p = q;
                }
                return p;
            };
            Poly pf = deriv(f, i), pg = deriv(g, d - i);
            TensorField out(Kind::Scalar, 0, 1, out_twist);
            for (const auto& [ef, cf] : pf)
                for (const auto& [eg, cg] : pg) out.add(FiberKey{}, {ef[0] + eg[0]}, cf * cg);
            return out;
        });
    }
    return tpl;
}

OpTemplate p5_template(int n, int p, int q) {
    (void)n;
    OpTemplate tpl;
    tpl.in1 = {Kind::Form, p, 0};
    tpl.in2 = {Kind::Form, q, 0};
    tpl.labels = {"dw1^w2", "w1^dw2"};
    int sgn = p % 2 ? -1 : 1;
    tpl.terms.push_back([sgn](const TensorField& w1, const TensorField& w2) {
        return wedge(ext_d(w1), w2) * Rational(sgn);
    });
    tpl.terms.push_back(
        [](const TensorField& w1, const TensorField& w2) { return wedge(w1, ext_d(w2)); });
    return tpl;
}

std::vector<std::vector<Rational>> fit_coefficients(const OpTemplate& tpl, int n, int dmax,
                                                    int K, int parallelism) {
    if (tpl.terms.empty()) throw ConfigError("empty template");
    auto fields = monomial_fields(n, dmax);
    auto b1 = basis_fields(n, tpl.in1, K);
    auto b2 = basis_fields(n, tpl.in2, K);

    size_t ntests = fields.size() * b1.size() * b2.size();
    // residual coefficients of every term, per test
    using RowChunk = std::map<std::pair<FiberKey, std::vector<int>>, std::vector<Rational>>;
    std::vector<RowChunk> chunks(ntests);

    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      try {
        for (size_t t = next.fetch_add(1); t < ntests; t = next.fetch_add(1)) {
            size_t f = t / (b1.size() * b2.size());
            size_t rem = t % (b1.size() * b2.size());
            size_t i = rem / b2.size(), j = rem % b2.size();
            RowChunk& chunk = chunks[t];
            for (size_t r = 0; r < tpl.terms.size(); ++r) {
                Residual res = residual(tpl.terms[r], fields[f], b1[i], b2[j]);
                for (const auto& [key, c] : res.field.coeffs()) {
                    auto& row = chunk[key];
                    if (row.empty()) row.assign(tpl.terms.size(), Rational(0));
                    row[r] = c;
                }
            }
        }
      } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
      }
    };
    int jobs = std::max(1, parallelism);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    std::vector<std::vector<Rational>> rows;
    for (const auto& chunk : chunks)
        for (const auto& [key, row] : chunk) rows.push_back(row);
    if (rows.empty())
        return kernel_basis(SparseMat(0, static_cast<int>(tpl.terms.size())));
    return kernel_basis(SparseMat::from_dense(rows));
}

}  // namespace bilops
