#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bilops/locus.hpp"
#include "bilops/polyroots.hpp"
#include "bilops/solver.hpp"
#include "helpers.hpp"

using namespace bilops;
using namespace bilops::testing;

TEST_CASE("rational parse and format") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_string(parse_rational("5")) == "5");
    CHECK(to_string(parse_rational("0/7")) == "0");
    CHECK(parse_rational("2/-4") == rat(-1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_rational("x"), ConfigError);
    CHECK(falling_factorial(rat(5), 3) == 60);
    CHECK(falling_factorial(rat(2, 3), 2) == rat(2, 3) * rat(-1, 3));
    CHECK(falling_factorial(rat(7), 0) == 1);
}

TEST_CASE("parampoly arithmetic and evaluation are a ring homomorphism") {
    auto rand_poly = [] {
        ParamPoly p;
        int nterms = rand_int(1, 5);
        for (int t = 0; t < nterms; ++t)
            p.add_term({rand_int(0, 3), rand_int(0, 3)}, rand_rational());
        return p;
    };
    for (int trial = 0; trial < 100; ++trial) {
        ParamPoly p = rand_poly(), q = rand_poly();
        std::vector<Rational> x = {rand_rational(), rand_rational()};
        CHECK((p * q).eval(x) == p.eval(x) * q.eval(x));
        CHECK((p + q).eval(x) == p.eval(x) + q.eval(x));
        CHECK((p - q).eval(x) == p.eval(x) - q.eval(x));
    }
}

TEST_CASE("parampoly exact division and printing") {
    ParamPoly l = ParamPoly::variable(0), m = ParamPoly::variable(1);
    ParamPoly prod = (l + m) * (l - ParamPoly::constant(2));
    CHECK(prod.exact_divide(l + m) == l - ParamPoly::constant(2));
    CHECK((l + m).divides_into(prod));
    CHECK_FALSE((l - m).divides_into(prod));
    CHECK((l * l * rat(3) - m * rat(1, 2)).str() == "3*l^2 - 1/2*m");
    CHECK(ParamPoly().str() == "0");
}

TEST_CASE("substitute and coeffs_in") {
    ParamPoly l = ParamPoly::variable(0), m = ParamPoly::variable(1);
    ParamPoly p = l * l * m + m * rat(2) + ParamPoly::constant(1);
    ParamPoly q = p.substitute(0, ParamPoly::constant(3));
    CHECK(q.eval({rat(0), rat(5)}) == p.eval({rat(3), rat(5)}));
    auto cs = p.coeffs_in(1);  // powers of m
    REQUIRE(cs.size() == 2);
    CHECK(cs[0] == ParamPoly::constant(1));
    CHECK(cs[1] == l * l + ParamPoly::constant(2));
}

TEST_CASE("kernel_basis on small closed-form fixtures") {
    SUBCASE("3x3 zero matrix has the standard basis") {
        SparseMat z(3, 3);
        auto k = kernel_basis(z);
        REQUIRE(k.size() == 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(k[i][j] == (i == j ? 1 : 0));
    }
    SUBCASE("3x3 identity is injective") {
        SparseMat id(3, 3);
        for (int i = 0; i < 3; ++i) id.set(i, i, 1);
        CHECK(kernel_basis(id).empty());
    }
    SUBCASE("[[1,1,0],[0,1,1]] has kernel spanned by (1,-1,1)") {
        SparseMat m = SparseMat::from_dense({{rat(1), rat(1), rat(0)}, {rat(0), rat(1), rat(1)}});
        auto k = kernel_basis(m);
        REQUIRE(k.size() == 1);
        CHECK(k[0] == std::vector<Rational>{rat(1), rat(-1), rat(1)});
        CHECK(matvec_is_zero(m, k[0]));
    }
}

TEST_CASE("rank + kernel dimension = cols against the dense oracle") {
    for (int trial = 0; trial < 60; ++trial) {
        auto dense = rand_matrix(8, 8);
        SparseMat m = SparseMat::from_dense(dense);
        auto kb = kernel_basis(m);
        int rk = rank(m);
        CHECK(rk == oracle_rank(dense));
        CHECK(rk + static_cast<int>(kb.size()) == m.cols);
        for (const auto& v : kb) {
            CHECK(matvec_is_zero(m, v));
            // first nonzero coordinate is 1
            size_t first = 0;
            while (first < v.size() && v[first] == 0) ++first;
            REQUIRE(first < v.size());
            CHECK(v[first] == 1);
        }
        // returned vectors are independent, hence a kernel basis
        if (!kb.empty()) {
            std::vector<std::vector<Rational>> bm(kb.size(), std::vector<Rational>(m.cols));
            for (size_t i = 0; i < kb.size(); ++i) bm[i] = kb[i];
            CHECK(oracle_rank(bm) == static_cast<int>(kb.size()));
        }
    }
}

TEST_CASE("rational_roots") {
    ParamPoly x = ParamPoly::variable(0, {"x"});
    auto c = [](long v) { return ParamPoly::constant(Rational(v), {"x"}); };
    CHECK(rational_roots(x * x - x, 0) == std::set<Rational>{rat(0), rat(1)});
    CHECK(rational_roots(x * rat(3) - c(2), 0) == std::set<Rational>{rat(2, 3)});
    CHECK(rational_roots(x * x - c(2), 0).empty());
    CHECK(rational_roots((x - c(2)) * (x * rat(2) - c(1)) * (x + c(5)), 0) ==
          std::set<Rational>{rat(2), rat(1, 2), rat(-5)});
    CHECK_THROWS_WITH_AS(rational_roots(ParamPoly({"x"}), 0), "identically zero", ConfigError);
}

TEST_CASE("resultant of the order-3 determinant conditions vanishes at the solution weights") {
    // The two Delta conditions of the d=3 case; their resultant eliminating l
    // must vanish at every common solution's m-coordinate, so 0 and 2 are
    // among its rational roots.
    ParamPoly l = ParamPoly::variable(0), m = ParamPoly::variable(1);
    auto c = [](const Rational& v) { return ParamPoly::constant(v); };
    ParamPoly d1 = (l * 2 - c(1)) * (l * 2) * (m * 3 - c(1)) +
                   (m * 2 - c(2)) * (m * 2 - c(1)) * (l * 3);
    ParamPoly d2 = (l * 2 - c(2)) * (l * 2 - c(1)) * (m * 3) +
                   (m * 2 - c(1)) * (m * 2) * (l * 3 - c(1));
    for (int i : {1, 2}) {
        CHECK(delta(i, 3, rat(0), rat(0)) == 0);
        CHECK(delta(i, 3, rat(0), rat(2)) == 0);
        CHECK(delta(i, 3, rat(2, 3), rat(2, 3)) == 0);
        CHECK(delta(i, 3, rat(1, 2), rat(1, 2)) == 0);
    }
    CHECK(d1.eval({rat(1, 3), rat(5)}) == delta(1, 3, rat(1, 3), rat(5)));
    CHECK(d2.eval({rat(1, 3), rat(5)}) == delta(2, 3, rat(1, 3), rat(5)));
    ParamPoly res = resultant(d1, d2, 0);
    REQUIRE(!res.is_zero());
    auto roots = rational_roots(res, 1);
    CHECK(roots.count(rat(0)) == 1);
    CHECK(roots.count(rat(2)) == 1);
}

TEST_CASE("delta equals the 3x3 determinant of the recurrence block") {
    for (int trial = 0; trial < 40; ++trial) {
        int d = rand_int(2, 6);
        int i = rand_int(1, d - 1);
        Rational l = rand_rational(), m = rand_rational();
        Rational j = d - i;
        // | 2l-i    2m-j+1  0      |
        // | 0       2l-i+1  2m-j   |
        // | 3l-i+1  0       3m-j+1 |
        Rational a = 2 * l - i, b = 2 * m - j + 1;
        Rational e = 2 * l - i + 1, f = 2 * m - j;
        Rational g = 3 * l - i + 1, h = 3 * m - j + 1;
        Rational det = a * (e * h - 0) - b * (0 - f * g);
        CHECK(delta(i, d, l, m) == det);
    }
    CHECK_THROWS_AS(delta(0, 3, rat(0), rat(0)), ConfigError);
    CHECK_THROWS_AS(delta(3, 3, rat(0), rat(0)), ConfigError);
}

TEST_CASE("minor_vanishing_locus fixtures") {
    SUBCASE("single row [2l, 2m] drops rank only at the origin") {
        ParamPoly l = ParamPoly::variable(0), m = ParamPoly::variable(1);
        auto locus = minor_vanishing_locus({{l * 2, m * 2}}, 1);
        CHECK_FALSE(locus.whole_plane);
        CHECK(locus.lines.empty());
        REQUIRE(locus.points.size() == 1);
        CHECK(locus.points[0] == std::make_pair(rat(0), rat(0)));
        CHECK(locus.residual.empty());
    }
    SUBCASE("order-2 full condition matrix gives three lines") {
        auto locus = minor_vanishing_locus(n1_parametric_matrix(2), 3);
        CHECK_FALSE(locus.whole_plane);
        REQUIRE(locus.lines.size() == 3);
        CHECK(locus.lines[0] == LocusLine{LocusLine::L, rat(0)});
        CHECK(locus.lines[1] == LocusLine{LocusLine::M, rat(0)});
        CHECK(locus.lines[2] == LocusLine{LocusLine::LPlusM, rat(1)});
        CHECK(locus.points.empty());
        CHECK(locus.residual.empty());
    }
    SUBCASE("order-3 full condition matrix gives four points") {
        auto locus = minor_vanishing_locus(n1_parametric_matrix(3), 4);
        CHECK(locus.lines.empty());
        REQUIRE(locus.points.size() == 4);
        CHECK(locus.points[0] == std::make_pair(rat(0), rat(0)));
        CHECK(locus.points[1] == std::make_pair(rat(0), rat(2)));
        CHECK(locus.points[2] == std::make_pair(rat(2, 3), rat(2, 3)));
        CHECK(locus.points[3] == std::make_pair(rat(2), rat(0)));
        CHECK(locus.residual.empty());
    }
    SUBCASE("irrational component is reported as residual") {
        ParamPoly l = ParamPoly::variable(0);
        auto locus =
            minor_vanishing_locus({{l * l - ParamPoly::constant(rat(2))}}, 1);
        CHECK(locus.lines.empty());
        CHECK(locus.points.empty());
        REQUIRE(locus.residual.size() == 1);
        CHECK(locus.residual[0] == "l^2 - 2");
    }
    SUBCASE("more than two parameters is unsupported") {
        ParamPoly x = ParamPoly::variable(0, {"a", "b", "c"});
        CHECK_THROWS_AS(minor_vanishing_locus({{x}}, 1), ConfigError);
    }
}

TEST_CASE("squarefree part") {
    ParamPoly x = ParamPoly::variable(0, {"x"});
    auto c = [](long v) { return ParamPoly::constant(Rational(v), {"x"}); };
    ParamPoly p = (x - c(1)) * (x - c(1)) * (x + c(2));
    ParamPoly sf = squarefree_part(p, 0);
    CHECK(sf.degree_in(0) == 2);
    CHECK(sf.eval({rat(1)}) == 0);
    CHECK(sf.eval({rat(-2)}) == 0);
}
