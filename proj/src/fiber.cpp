#include "bilops/fiber.hpp"

#include <algorithm>
#include <sstream>

namespace bilops {

Weight operator+(const Weight& a, const Weight& b) {
    if (a.size() != b.size()) throw ConfigError("weight arity mismatch");
    Weight out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Weight operator-(const Weight& a, const Weight& b) {
    if (a.size() != b.size()) throw ConfigError("weight arity mismatch");
    Weight out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

std::string weight_str(const Weight& w) {
    std::string out = "(";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ",";
        out += to_string(w[i]);
    }
    return out + ")";
}

Rational sl2_weight(const Weight& w) {
    if (w.size() != 2) throw ConfigError("sl2_weight needs n=2");
    return w[0] - w[1];
}

const Weight& IrredFiber::weight_of(int idx) const {
    if (idx < 0 || idx >= dim()) throw ConfigError("fiber index out of range");
    return weights_[idx];
}

IrredFiber IrredFiber::weight_basis(int n, const Weight& top_weight, int truncation) {
    if (n != 1 && n != 2) throw ConfigError("weight-basis fibers support n in {1,2}");
    if (static_cast<int>(top_weight.size()) != n) throw ConfigError("weight arity mismatch");
    IrredFiber f;
    f.n_ = n;
    f.top_weight_ = top_weight;
    f.weight_mode_ = true;
    if (n == 1) {
        f.truncation_ = 0;
        f.finite_ = true;
        f.weights_ = {top_weight};
        return f;
    }
    Rational lambda = sl2_weight(top_weight);
    if (is_nonneg_integer(lambda)) {
        f.truncation_ = static_cast<int>(to_long(lambda));
        f.finite_ = true;
    } else {
        if (truncation < 0) throw ConfigError("truncation must be >= 0");
        f.truncation_ = truncation;
        f.finite_ = false;
    }
    for (int i = 0; i <= f.truncation_; ++i)
        f.weights_.push_back({top_weight[0] - i, top_weight[1] + i});
    return f;
}

std::vector<std::pair<int, Rational>> IrredFiber::act(int i, int j, int idx) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_) throw ConfigError("generator index out of range");
    if (idx < 0 || idx >= dim()) throw ConfigError("fiber index out of range");
    if (!weight_mode_) return table_[i * n_ + j][idx];
    if (n_ == 1) return {{0, top_weight_[0]}};
    if (i == j) {
        Rational eig = i == 0 ? Rational(top_weight_[0] - idx) : Rational(top_weight_[1] + idx);
        return {{idx, eig}};
    }
    if (i == 0) {  // x_+
        if (idx == 0) return {};
        return {{idx - 1, sl2_weight(top_weight_) - idx + 1}};
    }
    // x_-
    if (idx == truncation_) {
        if (finite_) return {};
        throw TruncationError(
            "fiber truncation exceeded: lowering v_" + std::to_string(idx) +
                " needs truncation >= " + std::to_string(idx + 1),
            idx + 1);
    }
    return {{idx + 1, Rational(idx + 1)}};
}

namespace {

Weight monomial_weight(int n, int p, const Rational& twist, const TensorMonomial& mono) {
    Weight w(n, twist);
    for (size_t s = 0; s < mono.size(); ++s) {
        if (static_cast<int>(s) < p)
            w[mono[s]] += 1;
        else
            w[mono[s]] -= 1;
    }
    return w;
}

// E^i_j on a tensor expression: contravariant slots e_k -> delta_{jk} e_i,
// covariant slots e*_k -> -delta_{ik} e*_j, plus twist * delta_{ij}.
TensorExpr act_tensor(int n, int p, const Rational& twist, int i, int j,
                      const TensorExpr& v) {
    TensorExpr out;
    auto add = [&out](const TensorMonomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = out.find(m);
        if (it == out.end())
            out.emplace(m, c);
        else {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    };
    for (const auto& [mono, c] : v) {
        for (size_t s = 0; s < mono.size(); ++s) {
            bool contra = static_cast<int>(s) < p;
            if (contra && mono[s] == j) {
                TensorMonomial m = mono;
                m[s] = i;
                add(m, c);
            } else if (!contra && mono[s] == i) {
                TensorMonomial m = mono;
                m[s] = j;
                add(m, -c);
            }
        }
        if (i == j && twist != 0) add(mono, c * twist);
    }
    (void)n;
    return out;
}

// Echelon store: vectors keyed by leading monomial.
struct Echelon {
    std::map<TensorMonomial, TensorExpr> rows;

    // Reduce v against the rows; returns the residue.
    TensorExpr reduce(TensorExpr v) const {
        bool changed = true;
        while (changed && !v.empty()) {
            changed = false;
            auto lead = v.begin();  // smallest monomial as the pivot key
            auto it = rows.find(lead->first);
            if (it != rows.end()) {
                Rational f = lead->second / it->second.begin()->second;
                for (const auto& [m, c] : it->second) {
                    auto vit = v.find(m);
                    Rational nc = (vit == v.end() ? Rational(0) : vit->second) - f * c;
                    if (nc == 0) {
                        if (vit != v.end()) v.erase(vit);
                    } else {
                        v[m] = nc;
                    }
                }
                changed = true;
            }
        }
        return v;
    }

    bool insert(TensorExpr v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        Rational inv = 1 / v.begin()->second;
        for (auto& [m, c] : v) c *= inv;
        TensorMonomial lead = v.begin()->first;
        rows.emplace(std::move(lead), std::move(v));
        return true;
    }
};

}  // namespace

IrredFiber IrredFiber::tensor_realization(int n, int p, int q, const Rational& twist,
                                          const TensorExpr& hw) {
    if (n < 1) throw ConfigError("n must be positive");
    if (hw.empty()) throw ConfigError("highest-weight vector is zero");
    for (const auto& [mono, c] : hw) {
        if (static_cast<int>(mono.size()) != p + q) throw ConfigError("tensor slot count mismatch");
        for (int v : mono)
            if (v < 0 || v >= n) throw ConfigError("tensor slot index out of range");
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!act_tensor(n, p, twist, i, j, hw).empty()) {
                std::ostringstream msg;
                msg << "vector is not highest: raising operator E^" << (i + 1) << "_"
                    << (j + 1) << " does not annihilate it";
                throw ConfigError(msg.str());
            }

    // Generate the module by the lowering operators and echelonize.
    Echelon ech;
    std::vector<TensorExpr> basis_raw;
    ech.insert(hw);
    basis_raw.push_back(ech.rows.begin()->second);
    std::vector<TensorExpr> frontier = {basis_raw[0]};
    while (!frontier.empty()) {
        std::vector<TensorExpr> next;
        for (const auto& v : frontier)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < i; ++j) {
                    TensorExpr img = act_tensor(n, p, twist, i, j, v);
                    TensorExpr res = ech.reduce(img);
                    if (!res.empty()) {
                        Rational inv = 1 / res.begin()->second;
                        for (auto& [m, c] : res) c *= inv;
                        ech.rows.emplace(res.begin()->first, res);
                        basis_raw.push_back(res);
                        next.push_back(res);
                    }
                }
        frontier = std::move(next);
    }

    IrredFiber f;
    f.n_ = n;
    f.weight_mode_ = false;
    f.finite_ = true;
    f.truncation_ = static_cast<int>(basis_raw.size()) - 1;
    f.top_weight_ = monomial_weight(n, p, twist, hw.begin()->first);

    // Deterministic basis order: by (weight-distance from top, leading monomial).
    std::sort(basis_raw.begin(), basis_raw.end(), [](const TensorExpr& a, const TensorExpr& b) {
        return a.begin()->first < b.begin()->first;
    });
    std::map<TensorMonomial, int> lead_index;
    for (size_t k = 0; k < basis_raw.size(); ++k)
        lead_index[basis_raw[k].begin()->first] = static_cast<int>(k);

    for (const auto& v : basis_raw)
        f.weights_.push_back(monomial_weight(n, p, twist, v.begin()->first));

    auto express = [&](TensorExpr v) {
        std::vector<std::pair<int, Rational>> out;
        while (!v.empty()) {
            auto lead = v.begin();
            auto it = lead_index.find(lead->first);
            if (it == lead_index.end())
                throw ConfigError("internal: tensor module not closed under action");
            const TensorExpr& row = basis_raw[it->second];
            Rational f0 = lead->second / row.begin()->second;
            out.emplace_back(it->second, f0);
            for (const auto& [m, c] : row) {
                auto vit = v.find(m);
                Rational nc = (vit == v.end() ? Rational(0) : vit->second) - f0 * c;
                if (nc == 0) {
                    if (vit != v.end()) v.erase(vit);
                } else {
                    v[m] = nc;
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    f.table_.resize(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto& tbl = f.table_[i * n + j];
            tbl.reserve(basis_raw.size());
            for (const auto& v : basis_raw)
                tbl.push_back(express(act_tensor(n, p, twist, i, j, v)));
        }
    return f;
}

IrredFiber make_fiber(int n, const Weight& top_weight, int truncation) {
    return IrredFiber::weight_basis(n, top_weight, truncation);
}

FiberVec act_generator(const IrredFiber& f, int i, int j, const FiberVec& v) {
    FiberVec out;
    for (const auto& [idx, c] : v)
        for (const auto& [idx2, w] : f.act(i, j, idx)) {
            Rational nc = c * w;
            if (out.count(idx2)) nc += out[idx2];
            if (nc == 0)
                out.erase(idx2);
            else
                out[idx2] = nc;
        }
    return out;
}

FiberVec act_generator(const IrredFiber& f, const std::string& name, const FiberVec& v) {
    if (name == "x+") return act_generator(f, 0, 1, v);
    if (name == "x-") return act_generator(f, 1, 0, v);
    if (name.size() >= 2 && name[0] == 'h') {
        int k = std::stoi(name.substr(1)) - 1;
        return act_generator(f, k, k, v);
    }
    throw ConfigError("unknown generator name: " + name);
}

Rational weyl_dimension(const Weight& w) {
    size_t n = w.size();
    Rational dim = 1;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            dim *= (w[i] - w[j] + Rational(static_cast<long>(j - i))) /
                   Rational(static_cast<long>(j - i));
    return dim;
}

}  // namespace bilops
