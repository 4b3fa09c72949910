#include "bilops/polyroots.hpp"

#include <algorithm>

namespace bilops {

namespace {

// All positive divisors by trial division.  Inputs here are coefficients of
// primitive squarefree polynomials; a cap guards against pathological sizes.
std::vector<mpz_class> divisors(const mpz_class& n_in) {
    mpz_class n = abs(n_in);
    if (n == 0) throw ConfigError("divisors of zero requested");
    std::vector<mpz_class> small, large;
    mpz_class d = 1;
    long steps = 0;
    while (d * d <= n) {
        if (++steps > 20000000L)
            throw ConfigError("rational_roots: coefficient too large to factor (" +
                              n.get_str() + ")");
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
        ++d;
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

Rational eval_dense(const std::vector<Rational>& c, const Rational& x) {
    Rational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace

std::set<Rational> rational_roots(const std::vector<Rational>& dense_coeffs) {
    std::vector<Rational> c = dense_coeffs;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) throw ConfigError("identically zero");
    std::set<Rational> roots;
    size_t low = 0;
    while (low < c.size() && c[low] == 0) ++low;
    if (low > 0) {
        roots.insert(0);
        c.erase(c.begin(), c.begin() + low);
    }
    if (c.size() <= 1) return roots;

    // Primitive integer form.
    mpz_class den_lcm = 1, num_gcd = 0;
    for (const auto& q : c) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num().get_mpz_t());
    }
    std::vector<mpz_class> z(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        Rational t = c[i] * Rational(den_lcm) / Rational(num_gcd);
        z[i] = t.get_num();
    }

    if (z.size() == 2) {  // linear
        Rational r(-z[0], z[1]);
        r.canonicalize();
        roots.insert(r);
        return roots;
    }
    if (z.size() == 3) {  // quadratic: roots rational iff discriminant is a square
        mpz_class a = z[2], b = z[1], cc = z[0];
        mpz_class disc = b * b - 4 * a * cc;
        if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
            mpz_class s;
            mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
            for (int sgn : {-1, 1}) {
                Rational r(-b + sgn * s, 2 * a);
                r.canonicalize();
                roots.insert(r);
            }
        }
        return roots;
    }

    for (const auto& p : divisors(z.front()))
        for (const auto& q : divisors(z.back()))
            for (int sgn : {1, -1}) {
                Rational cand(sgn * p, q);
                cand.canonicalize();
                if (eval_dense(c, cand) == 0) roots.insert(cand);
            }
    return roots;
}

std::set<Rational> rational_roots(const ParamPoly& p, int var) {
    if (p.is_zero()) throw ConfigError("identically zero");
    // Shrink coefficients before divisor enumeration.
    ParamPoly q = p.degree_in(var) >= 3 ? squarefree_part(p, var) : p;
    return rational_roots(q.univariate_coeffs(var));
}

ParamPoly squarefree_part(const ParamPoly& p, int var) {
    if (p.is_zero() || p.degree_in(var) <= 0) return p;
    ParamPoly g = gcd_univariate(p, p.derivative(var), var);
    ParamPoly out = g.is_constant() ? p : p.exact_divide(g);
    Rational c = out.content();
    if (c != 0 && c != 1) out = out * (Rational(1) / c);
    return out;
}

}  // namespace bilops
