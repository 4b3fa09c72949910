#include "bilops/jet.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bilops {

int FieldMonomial::coeff_degree() const { return std::accumulate(a.begin(), a.end(), 0); }

Weight FieldMonomial::weight() const {
    Weight w(a.size());
    for (size_t t = 0; t < a.size(); ++t) w[t] = a[t];
    w[b] -= 1;
    return w;
}

std::string FieldMonomial::str() const {
    std::ostringstream out;
    for (size_t t = 0; t < a.size(); ++t) {
        if (a[t] == 0) continue;
        out << "x" << (t + 1);
        if (a[t] > 1) out << "^" << a[t];
    }
    out << "d" << (b + 1);
    return out.str();
}

std::vector<std::pair<FieldMonomial, Rational>> field_bracket(const FieldMonomial& x,
                                                              const FieldMonomial& y) {
    // [x^a d_b, x^c d_e] = c_b x^(a+c-e_b) d_e - a_e x^(a+c-e_e) d_b
    std::vector<std::pair<FieldMonomial, Rational>> out;
    std::vector<int> sum(x.a.size());
    for (size_t t = 0; t < x.a.size(); ++t) sum[t] = x.a[t] + y.a[t];
    if (y.a[x.b] > 0) {
        FieldMonomial m{sum, y.b};
        m.a[x.b] -= 1;
        out.emplace_back(m, Rational(y.a[x.b]));
    }
    if (x.a[y.b] > 0) {
        FieldMonomial m{sum, x.b};
        m.a[y.b] -= 1;
        out.emplace_back(m, Rational(-x.a[y.b]));
    }
    return out;
}

int JetKey::degree() const {
    return std::accumulate(a1.begin(), a1.end(), 0) + std::accumulate(a2.begin(), a2.end(), 0);
}

bool JetKey::operator==(const JetKey& o) const {
    return a1 == o.a1 && a2 == o.a2 && i == o.i && j == o.j;
}

bool JetKeyLess::operator()(const JetKey& x, const JetKey& y) const {
    if (x.a1 != y.a1) return x.a1 > y.a1;
    if (x.a2 != y.a2) return x.a2 > y.a2;
    if (x.i != y.i) return x.i < y.i;
    return x.j < y.j;
}

Weight key_weight(const JetKey& k, const IrredFiber& f1, const IrredFiber& f2) {
    Weight w = f1.weight_of(k.i) + f2.weight_of(k.j);
    for (size_t t = 0; t < k.a1.size(); ++t) w[t] -= k.a1[t] + k.a2[t];
    return w;
}

void JetVector::add(const JetKey& k, const Rational& c) {
    if (c == 0) return;
    auto it = terms.find(k);
    if (it == terms.end()) {
        terms.emplace(k, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

JetVector& JetVector::operator+=(const JetVector& o) {
    for (const auto& [k, c] : o.terms) add(k, c);
    return *this;
}

JetVector JetVector::operator*(const Rational& c) const {
    JetVector out;
    out.n = n;
    out.degree = degree;
    if (c == 0) return out;
    for (const auto& [k, v] : terms) out.terms.emplace(k, v * c);
    return out;
}

JetVector JetVector::normalized() const {
    if (terms.empty()) return *this;
    return *this * (1 / terms.begin()->second);
}

namespace {

void enumerate_multidegrees(int nvars, int total, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
    if (nvars == 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int k = total; k >= 0; --k) {
        cur.push_back(k);
        enumerate_multidegrees(nvars - 1, total - k, cur, out);
        cur.pop_back();
    }
}

// Coordinatewise falling factorial ff(alpha, beta); zero if alpha < beta.
Rational falling(const std::vector<int>& alpha, const std::vector<int>& beta) {
    Rational f = 1;
    for (size_t t = 0; t < alpha.size(); ++t) {
        if (alpha[t] < beta[t]) return 0;
        for (int k = 0; k < beta[t]; ++k) f *= alpha[t] - k;
    }
    return f;
}

}  // namespace

std::vector<JetKey> jet_basis(const IrredFiber& f1, const IrredFiber& f2, int d,
                              const std::optional<Weight>& nu) {
    if (f1.n() != f2.n()) throw ConfigError("fibers over different n");
    if (d < 0) throw ConfigError("degree must be >= 0");
    int n = f1.n();
    std::vector<std::vector<int>> monos;
    std::vector<int> cur;
    enumerate_multidegrees(2 * n, d, cur, monos);  // descending lex on (a1|a2)
    std::vector<JetKey> out;
    for (const auto& m : monos) {
        JetKey k;
        k.a1.assign(m.begin(), m.begin() + n);
        k.a2.assign(m.begin() + n, m.end());
        for (k.i = 0; k.i < f1.dim(); ++k.i)
            for (k.j = 0; k.j < f2.dim(); ++k.j)
                if (!nu || key_weight(k, f1, f2) == *nu) out.push_back(k);
    }
    return out;
}

JetVector act_field(const FieldMonomial& xi, const JetVector& v, const IrredFiber& f1,
                    const IrredFiber& f2) {
    int n = f1.n();
    if (static_cast<int>(xi.a.size()) != n || xi.b < 0 || xi.b >= n)
        throw ConfigError("field monomial arity mismatch");
    JetVector out;
    out.n = v.n;
    out.degree = v.degree - xi.coeff_degree() + 1;
    auto slot_action = [&](const JetKey& key, const Rational& c, int slot) {
        const std::vector<int>& alpha = slot == 1 ? key.a1 : key.a2;
        const IrredFiber& fib = slot == 1 ? f1 : f2;
        int fiber_idx = slot == 1 ? key.i : key.j;

        Rational f = falling(alpha, xi.a);
        if (f != 0) {
            JetKey nk = key;
            std::vector<int>& na = slot == 1 ? nk.a1 : nk.a2;
            for (int t = 0; t < n; ++t) na[t] = alpha[t] - xi.a[t];
            na[xi.b] += 1;
            out.add(nk, -c * f);
        }
        for (int t = 0; t < n; ++t) {
            if (xi.a[t] == 0) continue;
            std::vector<int> shifted = xi.a;
            shifted[t] -= 1;
            Rational g = falling(alpha, shifted);
            if (g == 0) continue;
            for (const auto& [idx2, w] : fib.act(t, xi.b, fiber_idx)) {
                JetKey nk = key;
                std::vector<int>& na = slot == 1 ? nk.a1 : nk.a2;
                for (int u = 0; u < n; ++u) na[u] = alpha[u] - shifted[u];
                (slot == 1 ? nk.i : nk.j) = idx2;
                out.add(nk, c * Rational(xi.a[t]) * g * w);
            }
        }
    };
    for (const auto& [key, c] : v.terms) {
        slot_action(key, c, 1);
        slot_action(key, c, 2);
    }
    return out;
}

JetVector act_fiber_slot(int slot, int gi, int gj, const JetVector& v, const IrredFiber& f1,
                         const IrredFiber& f2) {
    const IrredFiber& fib = slot == 1 ? f1 : f2;
    JetVector out;
    out.n = v.n;
    out.degree = v.degree;
    for (const auto& [key, c] : v.terms)
        for (const auto& [idx2, w] : fib.act(gi, gj, slot == 1 ? key.i : key.j)) {
            JetKey nk = key;
            (slot == 1 ? nk.i : nk.j) = idx2;
            out.add(nk, c * w);
        }
    return out;
}

Rational eval_poly_at(const std::vector<Rational>& coeffs, const Rational& x) {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

JetVector su_pair(int s, const std::vector<Rational>& poly_in_i, const IrredFiber& f1,
                  const IrredFiber& f2) {
    if (f1.n() != 2 || f2.n() != 2) throw ConfigError("su_pair needs n=2 fibers");
    if (s < 0) throw ConfigError("s must be >= 0");
    Rational lambda = sl2_weight(f1.top_weight());
    Rational mu = sl2_weight(f2.top_weight());
    JetVector out;
    out.n = 2;
    out.degree = 0;
    Rational sign = 1;
    for (int i = 0; i <= s; ++i, sign = -sign) {
        Rational p = eval_poly_at(poly_in_i, i);
        if (p == 0) continue;
        Rational den = falling_factorial(lambda, i) * falling_factorial(mu, s - i);
        if (den == 0)
            throw TruncationError("su_pair index out of truncation at i=" + std::to_string(i));
        if (i >= f1.dim() || s - i >= f2.dim())
            throw TruncationError("su_pair touches index beyond fiber basis", std::max(i, s - i));
        JetKey k;
        k.a1.assign(2, 0);
        k.a2.assign(2, 0);
        k.i = i;
        k.j = s - i;
        out.add(k, sign * p / den);
    }
    return out;
}

}  // namespace bilops
