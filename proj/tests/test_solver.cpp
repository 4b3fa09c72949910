#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "bilops/solver.hpp"
#include "helpers.hpp"

using namespace bilops;
using namespace bilops::testing;

namespace {

JetKey n1_key(int i, int j) {
    JetKey k;
    k.a1 = {i};
    k.a2 = {j};
    return k;
}

JetKey n2_key(std::vector<int> a1, std::vector<int> a2, int i = 0, int j = 0) {
    JetKey k;
    k.a1 = std::move(a1);
    k.a2 = std::move(a2);
    k.i = i;
    k.j = j;
    return k;
}

std::set<std::string> normalized_strings(const std::vector<JetVector>& vs) {
    std::set<std::string> out;
    for (const auto& v : vs) {
        std::string s;
        for (const auto& [k, c] : v.normalized().terms) {
            s += "(";
            for (int x : k.a1) s += std::to_string(x) + ",";
            s += "|";
            for (int x : k.a2) s += std::to_string(x) + ",";
            s += "|" + std::to_string(k.i) + "," + std::to_string(k.j) + ")=";
            s += to_string(c) + ";";
        }
        out.insert(s);
    }
    return out;
}

}  // namespace

TEST_CASE("order-1 system for n=1 is the single weighted equation") {
    Rational l = rat(3, 4), m = rat(-2, 5);
    IrredFiber f1 = make_fiber(1, {l}, 0), f2 = make_fiber(1, {m}, 0);
    auto sys = assemble_system(f1, f2, 1, {l + m - 1});
    // columns in descending lex: d'v(w, then v(d''w
    REQUIRE(sys.columns.size() == 2);
    CHECK(sys.columns[0] == n1_key(1, 0));
    CHECK(sys.columns[1] == n1_key(0, 1));
    // the cubic generator contributes no equation at d=1
    REQUIRE(sys.matrix.rows == 1);
    CHECK(sys.matrix.get(0, 0) == 2 * l);
    CHECK(sys.matrix.get(0, 1) == 2 * m);
}

TEST_CASE("parametric n=1 matrix agrees with the assembled systems") {
    for (int trial = 0; trial < 30; ++trial) {
        int d = rand_int(1, 5);
        Rational l = rand_rational(), m = rand_rational();
        IrredFiber f1 = make_fiber(1, {l}, 0), f2 = make_fiber(1, {m}, 0);
        auto vecs = singular_vectors(f1, f2, d, {l + m - d});
        auto pm = n1_parametric_matrix(d);
        // map jet coefficients r_p to column coefficients c_p = r_p p!(d-p)!
        for (const auto& v : vecs) {
            std::vector<Rational> c(d + 1, Rational(0));
            for (const auto& [k, coeff] : v.terms) {
                int p = k.a1[0];
                Rational fac = 1;
                for (int t = 2; t <= p; ++t) fac *= t;
                for (int t = 2; t <= d - p; ++t) fac *= t;
                c[p] = coeff * fac;
            }
            for (const auto& row : pm) {
                Rational acc = 0;
                for (int p = 0; p <= d; ++p) acc += row[p].eval({l, m}) * c[p];
                CHECK(acc == 0);
            }
        }
        // kernel dimensions agree
        std::vector<std::vector<Rational>> dense(pm.size(), std::vector<Rational>(d + 1));
        for (size_t r = 0; r < pm.size(); ++r)
            for (int p = 0; p <= d; ++p) dense[r][p] = pm[r][p].eval({l, m});
        CHECK(kernel_basis(SparseMat::from_dense(dense)).size() == vecs.size());
    }
}

TEST_CASE("order-3 kernels on the line") {
    SUBCASE("weights (0,0): one solution with the antisymmetric pattern") {
        IrredFiber f1 = make_fiber(1, {rat(0)}, 0), f2 = make_fiber(1, {rat(0)}, 0);
        auto vecs = singular_vectors(f1, f2, 3, {rat(-3)});
        REQUIRE(vecs.size() == 1);
        JetVector expect;
        expect.n = 1;
        expect.degree = 3;
        // c = (0,1,-1,0) in the 1/(i!j!) normalization
        expect.add(n1_key(2, 1), rat(-1, 2));
        expect.add(n1_key(1, 2), rat(1, 2));
        CHECK(vecs[0] == expect.normalized());
    }
    SUBCASE("weights (1/2,1/2): no solutions although every Delta_i vanishes") {
        CHECK(delta(1, 3, rat(1, 2), rat(1, 2)) == 0);
        CHECK(delta(2, 3, rat(1, 2), rat(1, 2)) == 0);
        IrredFiber f1 = make_fiber(1, {rat(1, 2)}, 0), f2 = make_fiber(1, {rat(1, 2)}, 0);
        CHECK(singular_vectors(f1, f2, 3, {rat(-2)}).empty());
    }
    SUBCASE("weights (2/3,2/3): the indecomposable third-order solution") {
        IrredFiber f1 = make_fiber(1, {rat(2, 3)}, 0), f2 = make_fiber(1, {rat(2, 3)}, 0);
        auto vecs = singular_vectors(f1, f2, 3, {rat(4, 3) - 3});
        REQUIRE(vecs.size() == 1);
        // c = (2,1,-1,-2): jet coefficients c_p/(p!(3-p)!)
        JetVector expect;
        expect.n = 1;
        expect.degree = 3;
        expect.add(n1_key(0, 3), rat(2, 6));
        expect.add(n1_key(1, 2), rat(1, 2));
        expect.add(n1_key(2, 1), rat(-1, 2));
        expect.add(n1_key(3, 0), rat(-2, 6));
        CHECK(vecs[0] == expect.normalized());
    }
}

TEST_CASE("first-order twisted-density solutions for n=1") {
    for (int trial = 0; trial < 20; ++trial) {
        Rational l = rand_rational(), m = rand_rational();
        if (l == 0 && m == 0) continue;
        IrredFiber f1 = make_fiber(1, {l}, 0), f2 = make_fiber(1, {m}, 0);
        auto vecs = singular_vectors(f1, f2, 1, {l + m - 1});
        REQUIRE(vecs.size() == 1);
        JetVector expect;
        expect.n = 1;
        expect.degree = 1;
        expect.add(n1_key(1, 0), -m);
        expect.add(n1_key(0, 1), l);
        CHECK(vecs[0] == expect.normalized());
    }
    // two operators at l = m = 0
    IrredFiber f0 = make_fiber(1, {rat(0)}, 0);
    CHECK(singular_vectors(f0, f0, 1, {rat(-1)}).size() == 2);
}

TEST_CASE("the degree-2 wedge solution for trivial n=2 fibers") {
    IrredFiber f = make_fiber(2, {rat(0), rat(0)}, 0);
    auto vecs = singular_vectors(f, f, 2, Weight{rat(-1), rat(-1)});
    REQUIRE(vecs.size() == 1);
    JetVector expect;
    expect.n = 2;
    expect.degree = 2;
    expect.add(n2_key({1, 0}, {0, 1}), rat(1));
    expect.add(n2_key({0, 1}, {1, 0}), rat(-1));
    CHECK(vecs[0] == expect.normalized());
    // and the second-slot square at nu = (0,-2)
    auto vecs2 = singular_vectors(f, f, 2, Weight{rat(0), rat(-2)});
    REQUIRE(vecs2.size() == 1);
    JetVector expect2;
    expect2.n = 2;
    expect2.degree = 2;
    expect2.add(n2_key({0, 1}, {0, 1}), rat(1));
    CHECK(vecs2[0] == expect2);
}

TEST_CASE("the six first-order weight families for n=2") {
    struct Fixture {
        Weight w1, w2, nu;
        int dim;
    };
    // classified sample points: Poisson-type, composition-with-d type, the
    // Lie derivative, the vector-valued family, and the s=0 cases; plus the
    // degenerate weights carrying two-parameter solution spaces.
    std::vector<Fixture> fixtures = {
        {{rat(2), rat(0)}, {rat(2), rat(0)}, {rat(3), rat(0)}, 1},
        {{rat(0), rat(-1)}, {rat(3), rat(1)}, {rat(2), rat(0)}, 1},
        {{rat(1), rat(0)}, {rat(3), rat(1)}, {rat(3), rat(1)}, 1},
        {{rat(2), rat(1)}, {rat(3), rat(2)}, {rat(4), rat(3)}, 1},
        {{rat(0), rat(0)}, {rat(3), rat(1)}, {rat(3), rat(0)}, 1},
        {{rat(1), rat(1)}, {rat(2), rat(2)}, {rat(3), rat(2)}, 1},
        {{rat(0), rat(0)}, {rat(0), rat(0)}, {rat(0), rat(-1)}, 2},
        {{rat(0), rat(-1)}, {rat(1), rat(0)}, {rat(0), rat(-1)}, 2},
        {{rat(1), rat(0)}, {rat(0), rat(-1)}, {rat(0), rat(-1)}, 2},
        {{rat(0), rat(-1)}, {rat(0), rat(-1)}, {rat(-1), rat(-2)}, 2},
    };
    for (const auto& fx : fixtures) {
        IrredFiber f1 = make_fiber(2, fx.w1, default_truncation(1));
        IrredFiber f2 = make_fiber(2, fx.w2, default_truncation(1));
        auto vecs = singular_vectors(f1, f2, 1, fx.nu);
        CHECK(static_cast<int>(vecs.size()) == fx.dim);
    }
}

TEST_CASE("minimal and full generator sets give identical kernels") {
    int checked = 0;
    while (checked < 50) {
        Weight w1 = {rand_rational(), rand_rational()};
        Weight w2 = {rand_rational(), rand_rational()};
        int d = rand_int(0, 3);
        IrredFiber f1 = make_fiber(2, w1, default_truncation(d));
        IrredFiber f2 = make_fiber(2, w2, default_truncation(d));
        auto nus = admissible_nu(f1, f2, d, NuPolicy::Balanced);
        const Weight& nu = nus[rand_int(0, static_cast<int>(nus.size()) - 1)];
        auto a = singular_vectors(f1, f2, d, nu, GeneratorSet::Minimal);
        auto b = singular_vectors(f1, f2, d, nu, GeneratorSet::Full);
        CHECK(normalized_strings(a) == normalized_strings(b));
        // every solution is annihilated by the whole full set
        for (const auto& v : a)
            for (const auto& xi : constraint_fields(2, GeneratorSet::Full))
                CHECK(act_field(xi, v, f1, f2).is_zero());
        ++checked;
    }
}

TEST_CASE("kernel dimension is symmetric under swapping the fibers") {
    for (int trial = 0; trial < 25; ++trial) {
        Weight w1 = {rand_rational(), rand_rational()};
        Weight w2 = {rand_rational(), rand_rational()};
        int d = rand_int(0, 3);
        IrredFiber f1 = make_fiber(2, w1, default_truncation(d));
        IrredFiber f2 = make_fiber(2, w2, default_truncation(d));
        for (const auto& nu : admissible_nu(f1, f2, d, NuPolicy::Balanced))
            CHECK(singular_vectors(f1, f2, d, nu).size() ==
                  singular_vectors(f2, f1, d, nu).size());
    }
}

TEST_CASE("degree-0 kernels recover the tensor-product decomposition") {
    // Number of irreducible summands of V_lambda ( V_mu equals min+1; the
    // oracle counts highest weights from weight multiplicities.
    for (int lam = 0; lam <= 4; ++lam)
        for (int mu = 0; mu <= 4; ++mu) {
            IrredFiber f1 = make_fiber(2, {rat(lam), rat(0)}, 0);
            IrredFiber f2 = make_fiber(2, {rat(mu), rat(0)}, 0);
            int total = 0;
            for (const auto& nu : admissible_nu(f1, f2, 0, NuPolicy::All))
                total += static_cast<int>(singular_vectors(f1, f2, 0, nu).size());
            CHECK(total == std::min(lam, mu) + 1);
            // character oracle: #hw of weight w = mult(w) - mult(w + (1,-1))
            auto mult = [&](const Weight& w) {
                int count = 0;
                for (int i = 0; i <= lam; ++i)
                    for (int j = 0; j <= mu; ++j)
                        if (f1.weight_of(i) + f2.weight_of(j) == w) ++count;
                return count;
            };
            for (const auto& nu : admissible_nu(f1, f2, 0, NuPolicy::All)) {
                int got = static_cast<int>(singular_vectors(f1, f2, 0, nu).size());
                if (nu[0] >= nu[1]) {
                    int hw = mult(nu) - mult(nu + Weight{rat(1), rat(-1)});
                    CHECK(got == hw);
                } else {
                    CHECK(got == 0);
                }
            }
        }
}

TEST_CASE("scan over the integer grid at order 1") {
    std::vector<std::pair<Weight, Weight>> grid;
    for (int l = -2; l <= 2; ++l)
        for (int m = -2; m <= 2; ++m) grid.push_back({{rat(l)}, {rat(m)}});
    ScanReport rep = scan(1, 1, grid, NuPolicy::All, GeneratorSet::Full, -1, 2);
    REQUIRE(rep.points.size() == 25);
    for (const auto& pt : rep.points) {
        REQUIRE(pt.error.empty());
        REQUIRE(pt.entries.size() == 1);
        bool origin = pt.w1[0] == 0 && pt.w2[0] == 0;
        CHECK(pt.entries[0].kernel_dim == (origin ? 2 : 1));
    }
}

TEST_CASE("parametric locus certificates") {
    N1Locus loc3 = n1_parametric_locus(3);
    REQUIRE(loc3.locus.points.size() == 4);
    REQUIRE(loc3.point_kernels.size() == 4);
    for (const auto& kb : loc3.point_kernels) CHECK(kb.size() == 1);
    N1Locus loc5 = n1_parametric_locus(5);
    CHECK(loc5.locus.lines.empty());
    CHECK(loc5.locus.points.empty());
    CHECK(loc5.locus.residual.empty());
    CHECK_FALSE(loc5.locus.whole_plane);
    N1Locus loc1 = n1_parametric_locus(1);
    CHECK(loc1.locus.whole_plane);
    CHECK_THROWS_AS(n1_parametric_locus(7), ConfigError);
}

TEST_CASE("quadratic fields act trivially on degree-0 vectors") {
    IrredFiber f1 = make_fiber(2, {rat(5, 3), rat(1)}, 5);
    IrredFiber f2 = make_fiber(2, {rat(1), rat(0)}, 0);
    for (const auto& k : jet_basis(f1, f2, 0)) {
        JetVector v;
        v.n = 2;
        v.degree = 0;
        v.add(k, 1);
        for (const auto& xi : constraint_fields(2, GeneratorSet::Full))
            if (xi.coeff_degree() == 2) CHECK(act_field(xi, v, f1, f2).is_zero());
    }
}
