#include "bilops/parampoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bilops {

namespace {

// Graded-lex descending, for printing and leading-term selection.
bool term_less_graded(const ParamPoly::Exponents& a, const ParamPoly::Exponents& b) {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
}

}  // namespace

ParamPoly ParamPoly::constant(const Rational& c, std::vector<std::string> vars) {
    ParamPoly p(std::move(vars));
    p.add_term(Exponents(p.nvars(), 0), c);
    return p;
}

ParamPoly ParamPoly::variable(int index, std::vector<std::string> vars) {
    ParamPoly p(std::move(vars));
    if (index < 0 || index >= p.nvars()) throw ConfigError("variable index out of range");
    Exponents e(p.nvars(), 0);
    e[index] = 1;
    p.add_term(e, 1);
    return p;
}

bool ParamPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational ParamPoly::constant_value() const {
    if (!is_constant()) throw ConfigError("polynomial is not constant: " + str());
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int ParamPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

int ParamPoly::degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

void ParamPoly::add_term(const Exponents& e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars()) throw ConfigError("exponent arity mismatch");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

ParamPoly ParamPoly::operator+(const ParamPoly& o) const {
    ParamPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

ParamPoly ParamPoly::operator-(const ParamPoly& o) const {
    ParamPoly out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
}

ParamPoly ParamPoly::operator*(const ParamPoly& o) const {
    ParamPoly out(vars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(nvars());
            for (int i = 0; i < nvars(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

ParamPoly ParamPoly::operator*(const Rational& c) const {
    ParamPoly out(vars_);
    if (c == 0) return out;
    for (const auto& [e, k] : terms_) out.terms_.emplace(e, k * c);
    return out;
}

Rational ParamPoly::eval(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != nvars())
        throw ConfigError("evaluation point arity mismatch");
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < nvars(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        sum += t;
    }
    return sum;
}

ParamPoly ParamPoly::substitute(int var, const ParamPoly& value) const {
    ParamPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        Exponents rest = e;
        rest[var] = 0;
        ParamPoly term(vars_);
        term.add_term(rest, c);
        for (int k = 0; k < e[var]; ++k) term = term * value;
        out = out + term;
    }
    return out;
}

ParamPoly ParamPoly::derivative(int var) const {
    ParamPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        out.add_term(d, c * e[var]);
    }
    return out;
}

std::vector<ParamPoly> ParamPoly::coeffs_in(int var) const {
    int d = degree_in(var);
    if (d < 0) return {};
    std::vector<ParamPoly> out(d + 1, ParamPoly(vars_));
    for (const auto& [e, c] : terms_) {
        Exponents rest = e;
        rest[var] = 0;
        out[e[var]].add_term(rest, c);
    }
    return out;
}

std::vector<Rational> ParamPoly::univariate_coeffs(int var) const {
    std::vector<Rational> out(std::max(degree_in(var), 0) + 1, Rational(0));
    for (const auto& [e, c] : terms_) {
        for (int i = 0; i < nvars(); ++i)
            if (i != var && e[i] != 0)
                throw ConfigError("polynomial is not univariate in " + vars_[var] + ": " + str());
        out[e[var]] = c;
    }
    return out;
}

ParamPoly ParamPoly::exact_divide(const ParamPoly& divisor) const {
    if (divisor.is_zero()) throw ConfigError("division by zero polynomial");
    ParamPoly rem = *this;
    ParamPoly quot(vars_);
    // Leading term wrt graded-lex descending.
    auto leading = [](const ParamPoly& p) {
        auto best = p.terms_.begin();
        for (auto it = p.terms_.begin(); it != p.terms_.end(); ++it)
            if (term_less_graded(best->first, it->first)) best = it;
        return best;
    };
    auto ld = leading(divisor);
    while (!rem.is_zero()) {
        auto lr = leading(rem);
        Exponents q(nvars());
        for (int i = 0; i < nvars(); ++i) {
            q[i] = lr->first[i] - ld->first[i];
            if (q[i] < 0) throw ConfigError("inexact polynomial division");
        }
        Rational qc = lr->second / ld->second;
        ParamPoly t(vars_);
        t.add_term(q, qc);
        quot = quot + t;
        rem = rem - t * divisor;
    }
    return quot;
}

bool ParamPoly::divides_into(const ParamPoly& dividend) const {
    try {
        (void)dividend.exact_divide(*this);
        return true;
    } catch (const ConfigError&) {
        return false;
    }
}

Rational ParamPoly::content() const {
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    if (num_gcd == 0) return 0;
    Rational out(num_gcd, den_lcm);
    out.canonicalize();
    return out;
}

std::string ParamPoly::str() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Exponents, Rational>*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
        return term_less_graded(b->first, a->first);
    });
    std::ostringstream out;
    bool first = true;
    for (auto* t : order) {
        Rational c = t->second;
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        Rational a = abs(c);
        bool has_var = std::any_of(t->first.begin(), t->first.end(), [](int x) { return x > 0; });
        if (a != 1 || !has_var) out << to_string(a);
        bool need_star = a != 1 || !has_var;
        for (int i = 0; i < nvars(); ++i) {
            if (t->first[i] == 0) continue;
            if (need_star) out << "*";
            out << vars_[i];
            if (t->first[i] > 1) out << "^" << t->first[i];
            need_star = true;
        }
    }
    return out.str();
}

ParamPoly det_bareiss(const std::vector<std::vector<ParamPoly>>& m) {
    size_t n = m.size();
    if (n == 0) throw ConfigError("determinant of empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw ConfigError("determinant of non-square matrix");
    std::vector<std::vector<ParamPoly>> a = m;
    ParamPoly prev = ParamPoly::constant(1, a[0][0].vars());
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return ParamPoly(a[0][0].vars());  // singular
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_divide(prev);
        prev = a[k][k];
    }
    ParamPoly det = a[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

ParamPoly resultant(const ParamPoly& p, const ParamPoly& q, int var) {
    auto vars = p.vars();
    if (p.is_zero() || q.is_zero()) return ParamPoly(vars);
    auto pc = p.coeffs_in(var);
    auto qc = q.coeffs_in(var);
    int dp = static_cast<int>(pc.size()) - 1;
    int dq = static_cast<int>(qc.size()) - 1;
    if (dp == 0 && dq == 0) return ParamPoly::constant(1, vars);
    if (dp == 0) {
        ParamPoly out = ParamPoly::constant(1, vars);
        for (int i = 0; i < dq; ++i) out = out * pc[0];
        return out;
    }
    if (dq == 0) {
        ParamPoly out = ParamPoly::constant(1, vars);
        for (int i = 0; i < dp; ++i) out = out * qc[0];
        return out;
    }
    int n = dp + dq;
    std::vector<std::vector<ParamPoly>> syl(n, std::vector<ParamPoly>(n, ParamPoly(vars)));
    for (int r = 0; r < dq; ++r)
        for (int i = 0; i <= dp; ++i) syl[r][r + i] = pc[dp - i];
    for (int r = 0; r < dp; ++r)
        for (int i = 0; i <= dq; ++i) syl[dq + r][r + i] = qc[dq - i];
    return det_bareiss(syl);
}

ParamPoly gcd_univariate(const ParamPoly& p, const ParamPoly& q, int var) {
    ParamPoly a = p, b = q;
    auto normalize = [&](ParamPoly& f) {
        if (f.is_zero()) return;
        auto cs = f.univariate_coeffs(var);
        f = f * (Rational(1) / cs.back());
    };
    while (!b.is_zero()) {
        // a mod b over Q[var]
        auto ac = a.univariate_coeffs(var);
        auto bc = b.univariate_coeffs(var);
        while (!a.is_zero() && a.degree_in(var) >= b.degree_in(var)) {
            ac = a.univariate_coeffs(var);
            bc = b.univariate_coeffs(var);
            int shift = static_cast<int>(ac.size() - bc.size());
            Rational f = ac.back() / bc.back();
            ParamPoly t(a.vars());
            ParamPoly::Exponents e(a.nvars(), 0);
            e[var] = shift;
            t.add_term(e, f);
            a = a - t * b;
        }
        std::swap(a, b);
    }
    normalize(a);
    return a;
}

}  // namespace bilops
