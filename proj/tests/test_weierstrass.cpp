#include <doctest.h>

#include <random>

#include <zeq/error.hpp>
#include <zeq/expr.hpp>
#include <zeq/weierstrass.hpp>

#include "oracles.hpp"

using namespace zeq;

namespace
{

Jet J(const CtxPtr &ctx, const std::string &text, int order = 16)
{
    std::map<std::string, Poly> sym;
    for (int i = 0; i < ctx->size(); ++i) {
        sym.emplace(ctx->names[static_cast<std::size_t>(i)], Poly::variable(ctx->size(), i));
    }
    return Jet::from_poly(ctx, to_poly(parse_expr(text), sym, ctx->size()), order);
}

int min_order(std::initializer_list<int> xs)
{
    return std::min(xs);
}

} // namespace

TEST_SUITE("weierstrass")
{
    TEST_CASE("regularity order")
    {
        auto ctx = make_context({"x1", "x2"});
        CHECK(regularity_order(J(ctx, "x2^2 - x1^3"), 1).value == 2);
        CHECK(regularity_order(J(ctx, "x1*x2"), 1).infinite());
        CHECK(regularity_order(J(ctx, "(1+x1)*x2^3"), 1).value == 3);
    }

    TEST_CASE("regular changes")
    {
        auto ctx = make_context({"x1", "x2"});
        CHECK(find_regular_change(J(ctx, "x2^2 - x1^3"), 1, {0, 1}, 0).is_identity());

        const Jet f = J(ctx, "x1*x2");
        const LinearChange c = find_regular_change(f, 1, {0, 1}, 0);
        CHECK_FALSE(c.is_identity());
        CHECK(regularity_order(c.apply(f), 1).value == 2);
        CHECK(c.inverted().apply(c.apply(f)).poly() == f.poly());
        CHECK(find_regular_change(f, 1, {0, 1}, 0).matrix == c.matrix);

        CHECK_THROWS_AS(find_regular_change(Jet(ctx, 16), 1, {0, 1}, 0), Error);
    }

    TEST_CASE("preparation")
    {
        auto ctx = make_context({"x1", "x2"});
        const PreparedForm a = weierstrass_prepare(J(ctx, "(1+x1)*x2^2 - x1^2", 5), 1);
        CHECK(a.unit.poly() == J(ctx, "1 + x1", 5).poly());
        CHECK(a.poly.to_jet(5).poly() == J(ctx, "x2^2 - x1^2 + x1^3 - x1^4", 5).poly());

        const PreparedForm b = weierstrass_prepare(J(ctx, "x2^3 - x1^2*x2 + x1^5"), 1);
        CHECK(b.unit.poly() == Poly::constant(2, Scalar(1)));
        CHECK(b.poly.to_jet(16).poly() == J(ctx, "x2^3 - x1^2*x2 + x1^5").poly());

        auto one = make_context({"x1"});
        const PreparedForm c = weierstrass_prepare(J(one, "4*x1^3"), 0);
        CHECK(c.unit.poly() == Poly::constant(1, Scalar(4)));
        CHECK(c.poly.to_jet(16).poly() == J(one, "x1^3").poly());

        CHECK_THROWS_AS(weierstrass_prepare(J(ctx, "x1*x2"), 1), Error);
    }

    TEST_CASE("division")
    {
        auto ctx = make_context({"x1", "x2"});
        const DivisionResult d = weierstrass_divide(J(ctx, "x2^3"), J(ctx, "x2^2 - x1"), 1);
        CHECK(d.quotient.poly() == J(ctx, "x2").poly());
        CHECK(d.remainder.poly() == J(ctx, "x1*x2").poly());

        const Jet f = J(ctx, "x2^2 - x1^3");
        const DivisionResult e = weierstrass_divide(f, f, 1);
        CHECK(e.quotient.poly() == Poly::constant(2, Scalar(1)));
        CHECK(e.remainder.is_zero());

        const DivisionResult r = weierstrass_divide(J(ctx, "x1"), f, 1);
        CHECK(r.quotient.is_zero());
        CHECK(r.remainder.poly() == J(ctx, "x1").poly());
    }

    TEST_CASE("random regular pairs satisfy both identities")
    {
        std::mt19937_64 rng(77);
        auto ctx = make_context({"x1", "x2", "x3"});
        const int order = 9;
        for (int trial = 0; trial < 30; ++trial) {
            const int p = 1 + trial % 4;
            Poly fp = oracle::random_poly(rng, 3, 1, 5, 6);
            Monomial vp;
            vp.e[2] = static_cast<std::uint16_t>(p);
            fp = fp.truncated(order);
            // Drop pure x3 terms of low degree so that the order in x3 is exactly p.
            Poly cleaned(3);
            for (const auto &[m, c] : fp.terms()) {
                if (!(m.e[0] == 0 && m.e[1] == 0 && m.e[2] <= p)) {
                    cleaned.add_term(m, c);
                }
            }
            cleaned.add_term(vp, Scalar(1 + static_cast<int>(rng() % 3)));
            const Jet f = Jet::from_poly(ctx, cleaned, order);
            const Jet g = Jet::from_poly(ctx, oracle::random_poly(rng, 3, 0, 6, 7), order);

            const PreparedForm pf = weierstrass_prepare(f, 2);
            CHECK(pf.unit.is_unit());
            CHECK(pf.poly.distinguished());
            CHECK(pf.poly.degree() == p);
            const int n = pf.order;
            CHECK((pf.unit.with_order(n) * pf.poly.to_jet(n) - f.with_order(n)).is_zero());

            const DivisionResult d = weierstrass_divide(g, f, 2);
            const int m = min_order({d.quotient.order(), d.remainder.order(), g.order()});
            CHECK((g.with_order(m) - d.quotient.with_order(m) * f.with_order(m) - d.remainder.with_order(m)).is_zero());
            CHECK(d.remainder.poly().degree_in(2) < p);
        }
    }
}
