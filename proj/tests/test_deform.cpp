#include <doctest.h>

#include <zeq/deform.hpp>
#include <zeq/error.hpp>
#include <zeq/expr.hpp>
#include <zeq/tower.hpp>

using namespace zeq;

namespace
{

Jet J(const CtxPtr &ctx, const std::string &text, int order = 16, bool exact = true)
{
    std::map<std::string, Poly> sym;
    for (int i = 0; i < ctx->size(); ++i) {
        sym.emplace(ctx->names[static_cast<std::size_t>(i)], Poly::variable(ctx->size(), i));
    }
    return Jet::from_poly(ctx, to_poly(parse_expr(text), sym, ctx->size()), order, exact);
}

SolutionFamily cusp_family(const std::string &y1, const std::string &y2, const std::string &w)
{
    auto x = make_context({"x"});
    auto xy = make_context({"x", "y1", "y2"});
    auto xz = make_context({"x", "z"});
    SolutionFamily sf;
    sf.system = {J(xy, "y1^2 - y2^3")};
    sf.y_vars = {"y1", "y2"};
    sf.family = {J(xz, y1), J(xz, y2)};
    sf.z_vars = {"z"};
    sf.witness = {J(x, w)};
    return sf;
}

} // namespace

TEST_SUITE("deform")
{
    TEST_CASE("verify_family")
    {
        auto x = make_context({"x"});
        SolutionFamily a = cusp_family("x^3*z^3", "x^2*z^2", "x");
        a.target = {J(x, "x^6"), J(x, "x^4")};
        const FamilyCheck ca = verify_family(a, 16);
        CHECK(ca.residual_ok);
        CHECK(ca.reproduce_ok);
        CHECK(ca.residuals[0].is_zero());

        SolutionFamily b = cusp_family("z^3", "z^2", "x + x^2");
        b.target = {J(x, "(x + x^2)^3"), J(x, "(x + x^2)^2")};
        CHECK(verify_family(b, 16).passed());

        const SolutionFamily broken = cusp_family("x^3*z^3", "x^2*z", "x");
        const FamilyCheck cb = verify_family(broken, 16);
        CHECK_FALSE(cb.residual_ok);
        CHECK_FALSE(cb.residuals[0].is_zero());
        CHECK_FALSE(cb.target_supplied);
    }

    TEST_CASE("nested shape")
    {
        auto x = make_context({"x1", "x2"});
        auto xy = make_context({"x1", "x2", "y1", "y2"});
        auto xz = make_context({"x1", "x2", "z"});
        SolutionFamily sf;
        sf.system = {J(xy, "y1*y2 - x1*x2")};
        sf.y_vars = {"y1", "y2"};
        sf.family = {J(xz, "x1*z"), J(xz, "x2 + z^2")};
        sf.z_vars = {"z"};
        sf.witness = {J(x, "x1")};
        CHECK(verify_nested(sf, {{1, 2}, {1, 1}}).ok);

        sf.family[0] = J(xz, "x1*z + x2");
        const NestedCheck bad = verify_nested(sf, {{1, 2}, {1, 1}});
        CHECK_FALSE(bad.ok);
        REQUIRE_FALSE(bad.violations.empty());
        CHECK(bad.violations[0].find("x2") != std::string::npos);

        SolutionFamily implicit;
        implicit.system = {J(xy, "y1 - x1")};
        implicit.y_vars = {"y1"};
        implicit.family = {J(x, "x1")};
        CHECK(verify_nested(implicit, {{1}, {0}}).ok);
    }

    TEST_CASE("binomial families")
    {
        auto x = make_context({"x"});
        const SolutionFamily a = binomial_family(J(x, "x^6"), J(x, "x^4"));
        CHECK(a.family[0].poly() == J(make_context({"x", "z"}), "x^3*z^3").poly());
        CHECK(a.family[1].poly() == J(make_context({"x", "z"}), "x^2*z^2").poly());
        CHECK(a.witness[0].poly() == J(x, "x").poly());
        CHECK(verify_family(a, 16).passed());

        const SolutionFamily b = binomial_family(J(x, "x^3*(1+x)^3", 16, false), J(x, "x^2*(1+x)^2", 16, false));
        CHECK(b.witness[0].poly() == J(x, "x + x^2").poly());
        CHECK(verify_family(b, 16).passed());

        CHECK_THROWS_AS(binomial_family(J(x, "x^4"), J(x, "x^4")), Error);
    }

    TEST_CASE("deformation from tower data")
    {
        auto ctx = make_context({"x1", "x2", "z"});
        TowerSolution ts;
        ts.ctx = ctx;
        ts.n = 2;
        ts.levels.push_back(PseudoPolynomial(ctx, 1, {Jet(ctx, 16), J(ctx, "-x1^3*(1+z)")}, 16));
        ts.levels.push_back(PseudoPolynomial(ctx, 0, {Jet(ctx, 16), Jet(ctx, 16), Jet(ctx, 16)}, 16));
        ts.units = {J(ctx, "4*(1+z)")};
        ts.indices = {1};
        ts.bottom_unit = Jet::constant(ctx, Scalar(3), 16);
        ts.bottom_index = 3;
        ts.tau = {1, 0};
        ts.witness = {J(make_context({"x1", "x2"}), "x1^2")};
        const DeformationResult r = build_deformation(ts);
        CHECK(r.identities_ok);
        CHECK(r.nested_ok);
        CHECK(r.fiber_polynomial);
        CHECK(r.failures.empty());
        CHECK(r.family.poly() == J(make_context({"t", "x1", "x2"}, 1), "x2^2 - x1^3 - t*x1^5").poly());
        CHECK(check_family(r.family).verdict == Verdict::equisingular);
    }

    TEST_CASE("trivial deformation")
    {
        auto ctx = make_context({"x1", "x2", "z"});
        TowerSolution ts;
        ts.ctx = ctx;
        ts.n = 2;
        ts.levels.push_back(PseudoPolynomial(ctx, 1, {Jet(ctx, 16), J(ctx, "-x1^3")}, 16));
        ts.levels.push_back(PseudoPolynomial(ctx, 0, {Jet(ctx, 16), Jet(ctx, 16), Jet(ctx, 16)}, 16));
        ts.units = {J(ctx, "4")};
        ts.indices = {1};
        ts.bottom_unit = Jet::constant(ctx, Scalar(3), 16);
        ts.bottom_index = 3;
        ts.tau = {1, 0};
        ts.witness = {J(make_context({"x1", "x2"}), "x1")};
        const DeformationResult r = build_deformation(ts);
        CHECK(r.identities_ok);
        CHECK(r.family.poly() == J(make_context({"t", "x1", "x2"}, 1), "x2^2 - x1^3").poly());
        CHECK(check_family(r.family).verdict == Verdict::equisingular);
    }
}
