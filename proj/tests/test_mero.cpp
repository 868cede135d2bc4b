#include <doctest.h>

#include <random>

#include <zeq/error.hpp>
#include <zeq/expr.hpp>
#include <zeq/mero.hpp>

#include "fixtures.hpp"

using namespace zeq;

namespace
{

const std::vector<std::string> kNames{"x1", "x2"};

Poly P(const std::string &text)
{
    return to_poly(parse_expr(text), {{"x1", Poly::variable(2, 0)}, {"x2", Poly::variable(2, 1)}}, 2);
}

FactoredGerm G(std::vector<std::pair<std::string, int>> fs)
{
    std::vector<std::pair<Poly, int>> out;
    for (const auto &[t, k] : fs) {
        out.emplace_back(P(t), k);
    }
    return FactoredGerm::make(Scalar(1), out);
}

// a and b agree up to a nonzero constant.
bool proportional(const OneForm &a, const OneForm &b)
{
    const Poly &ref = b.a.is_zero() ? b.b : b.a;
    const Poly &mine = b.a.is_zero() ? a.b : a.a;
    if (ref.is_zero() || mine.is_zero()) {
        return false;
    }
    const Scalar k = mine.leading_coeff() / ref.leading_coeff();
    return a.a == b.a * k && a.b == b.b * k;
}

} // namespace

TEST_SUITE("mero")
{
    TEST_CASE("theta")
    {
        const OneForm a = theta(G({{"x2", 2}}), G({{"x1", 1}}));
        CHECK(a == OneForm{P("-x2"), P("2*x1")});
        const OneForm b = theta(G({{"x1", 1}, {"x2", 1}}), G({{"x1 + x2", 2}}));
        CHECK(b == OneForm{P("(x2 - x1)*x2"), P("(x2 - x1)*(-x1)")});
        CHECK(theta(G({{"x2", 1}}), G({{"x1", 1}})) == OneForm{P("-x2"), P("x1")});
        CHECK(theta_logarithmic(G({{"x1", 1}, {"x2", 1}}), G({{"x1 + x2", 2}})) == b);
    }

    TEST_CASE("divisor constants")
    {
        const FactoredGerm f = G({{"x1", 1}, {"x2", 1}});
        const FactoredGerm g = G({{"x1 + x2", 2}});
        const auto r = divisor_constant(P("x1 - x2"), f, g);
        REQUIRE(r.has_value());
        CHECK(r->c == Scalar(mpq_class(1, 4)));
        CHECK(r->mu == 1);
        CHECK(r->rho == P("-1/4"));

        CHECK_THROWS_AS(divisor_constant(P("x1 + x2"), f, g), Error);

        const auto z = divisor_constant(P("x1 - 2*x2"), f, g);
        REQUIRE(z.has_value());
        CHECK(z->c == Scalar(mpq_class(2, 9)));
        CHECK(z->mu == 0);
    }

    TEST_CASE("analysis")
    {
        const MeroAnalysis a = analyze(G({{"x1", 1}, {"x2", 1}}), G({{"x1 + x2", 2}}), kNames);
        CHECK(a.e() == 1);
        CHECK(a.records[0].c == Scalar(mpq_class(1, 4)));
        CHECK(proportional(a.omega, OneForm{P("x2"), P("-x1")}));
        CHECK(a.isolated);
        CHECK(a.real);

        const MeroAnalysis b = analyze(G({{"x2", 2}}), G({{"x1", 1}}), kNames);
        CHECK(b.e() == 0);
        CHECK(b.omega == b.theta);

        const MeroAnalysis c = analyze(G({{"x2", 1}}), G({{"x1", 1}}), kNames);
        CHECK(c.e() == 0);
        CHECK(c.omega == OneForm{P("-x2"), P("x1")});

        const MeroAnalysis d = analyze(G({{"x1", 1}, {"x2", 1}}), G({{"x1 + x2", 2}}), kNames, {P("x1 - 2*x2")});
        CHECK(d.e() == 1);
        REQUIRE(d.informational.size() == 1);
        CHECK(d.informational[0].mu == 0);
    }

    TEST_CASE("two divisors and an algebraic constant")
    {
        const MeroAnalysis a = analyze(G({{"x1", 1}, {"x2", 1}}), G({{"x1 + x2", 1}, {"x1 + 4*x2", 1}}), kNames);
        REQUIRE(a.e() == 2);
        std::vector<Scalar> cs{a.records[0].c, a.records[1].c};
        CHECK(std::find(cs.begin(), cs.end(), Scalar(1)) != cs.end());
        CHECK(std::find(cs.begin(), cs.end(), Scalar(mpq_class(1, 9))) != cs.end());
        const SystemS s = emit_system(a, G({{"x1", 1}, {"x2", 1}}), G({{"x1 + x2", 1}, {"x1 + 4*x2", 1}}));
        CHECK(s.equations.size() == 2);
        CHECK(s.all_satisfied());

        const MeroAnalysis b = analyze(G({{"x1", 1}, {"x2", 1}}), G({{"x1 - x2", 1}, {"x1 - 2*x2", 1}}), kNames);
        REQUIRE(b.e() == 2);
        for (const auto &r : b.records) {
            CHECK_FALSE(r.c.is_rational());
            // c is a root of w^2 + 6w + 1.
            CHECK((r.c * r.c + r.c * Scalar(6) + Scalar(1)).is_zero());
        }
        CHECK(b.real);
    }

    TEST_CASE("system (S)")
    {
        const FactoredGerm f = G({{"x1", 1}, {"x2", 1}});
        const FactoredGerm g = G({{"x1 + x2", 2}});
        const SystemS s = emit_system(analyze(f, g, kNames), f, g);
        REQUIRE(s.equations.size() == 1);
        CHECK(s.unknowns == std::vector<std::string>{"y1_1", "y1_2", "y2_1", "y3_1", "y4_1"});
        const Poly y = Poly::variable(5, 0) * Poly::variable(5, 1) - Poly::variable(5, 2).pow(2) * Scalar(mpq_class(1, 4)) -
                       Poly::variable(5, 3).pow(2) * Poly::variable(5, 4);
        CHECK(s.equations[0] == y);
        CHECK(s.solution[3] == P("x1 - x2"));
        CHECK(s.solution[4] == P("-1/4"));
        CHECK(s.all_satisfied());

        const FactoredGerm f0 = G({{"x2", 1}});
        const FactoredGerm g0 = G({{"x1", 1}});
        CHECK(emit_system(analyze(f0, g0, kNames), f0, g0).equations.empty());
    }

    TEST_CASE("constructed divisor fixtures")
    {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 25; ++trial) {
            const fixture::DivisorFixture fx = fixture::divisor_fixture(rng);
            const MeroAnalysis a = analyze(fx.f, fx.g, kNames);
            bool found = false;
            for (const auto &r : a.records) {
                if (r.h.monic() == fx.h.monic()) {
                    found = true;
                    CHECK(r.c == fx.c);
                    CHECK(r.mu == fx.m - 1);
                    CHECK(r.h.pow(static_cast<unsigned>(r.mu + 1)).mul(r.rho) ==
                          fx.f.expanded() - fx.g.expanded() * fx.c);
                }
            }
            CHECK(found);
            CHECK(fixture::form_multiplicity(a.theta, fx.h) == fx.m - 1);
            CHECK(emit_system(a, fx.f, fx.g).all_satisfied());
        }
    }

    TEST_CASE("deformation slices")
    {
        const FactoredGerm f = G({{"x1", 1}, {"x2", 1}});
        const FactoredGerm g = G({{"x1 + x2", 2}});
        const SystemS s = emit_system(analyze(f, g, kNames), f, g);
        auto xz = make_context({"x1", "x2", "z"});
        SolutionFamily sf;
        sf.system = s.equation_jets(16);
        sf.y_vars = s.unknowns;
        for (const auto &sol : s.solution) {
            sf.family.push_back(Jet::from_poly(xz, sol, 16));
        }
        sf.z_vars = {"z"};
        sf.witness = {Jet::from_poly(make_context(kNames), P("x1 + x1^2"), 16)};
        const std::vector<Scalar> grid{Scalar(0), Scalar(mpq_class(1, 2)), Scalar(1)};
        const MeroDeformation md = build_mero_deformation(s, sf, grid, 1, f, g, 16);
        CHECK(md.family_ok);
        REQUIRE(md.slices.size() == 3);
        for (const auto &sl : md.slices) {
            CHECK(sl.division_ok);
            CHECK(sl.isolated == Isolation::yes);
            CHECK(sl.theta == md.slices[0].theta);
            CHECK(sl.omega == md.slices[0].omega);
        }
        REQUIRE(md.slices[0].matches_input.has_value());
        CHECK(*md.slices[0].matches_input);
    }
}
