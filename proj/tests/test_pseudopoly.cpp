#include <doctest.h>

#include <random>

#include <zeq/determinant.hpp>
#include <zeq/error.hpp>
#include <zeq/pseudopoly.hpp>

#include "oracles.hpp"

using namespace zeq;
using oracle::Q;

namespace
{

// Monic polynomial in y with rational roots; context (x1, y).
PseudoPolynomial from_roots(const std::vector<Q> &roots, int order = 16)
{
    auto ctx = make_context({"x1", "y"});
    const auto c = oracle::poly_from_roots(roots);
    const std::size_t p = roots.size();
    std::vector<Jet> a;
    for (std::size_t j = 1; j <= p; ++j) {
        a.push_back(Jet::constant(ctx, Scalar(c[p - j]), order));
    }
    return PseudoPolynomial(ctx, 1, a, order);
}

Jet X(const CtxPtr &ctx, const std::string &name, unsigned k, const Scalar &c, int order)
{
    return Jet::variable(ctx, name, order).pow(k) * c;
}

} // namespace

TEST_SUITE("pseudopoly")
{
    TEST_CASE("power sums")
    {
        const auto s = power_sums(from_roots({2, 3}), 3);
        CHECK(s[0].constant_term() == Scalar(2));
        CHECK(s[1].constant_term() == Scalar(5));
        CHECK(s[2].constant_term() == Scalar(13));

        const auto z = power_sums(from_roots({0, 0, 0, 0}), 5);
        CHECK(z[0].constant_term() == Scalar(4));
        for (int k = 1; k < 5; ++k) {
            CHECK(z[static_cast<std::size_t>(k)].is_zero());
        }

        auto ctx = make_context({"x1", "y"});
        const PseudoPolynomial cusp(ctx, 1, {Jet(ctx, 16), X(ctx, "x1", 3, Scalar(-1), 16)});
        const auto c = power_sums(cusp, 3);
        CHECK(c[0].constant_term() == Scalar(2));
        CHECK(c[1].is_zero());
        CHECK(c[2].poly() == X(ctx, "x1", 3, Scalar(2), 16).poly());
    }

    TEST_CASE("Hankel minors")
    {
        CHECK(hankel_minor(from_roots({2, 3}), 2).constant_term() == Scalar(1));
        CHECK(hankel_minor(from_roots({1, 1, 2}), 1).constant_term() == Scalar(3));
        CHECK(hankel_minor(from_roots({1, 1, 2}), 3).is_zero());
    }

    TEST_CASE("generalized discriminants")
    {
        auto ctx = make_context({"x1", "y"});
        const PseudoPolynomial cusp(ctx, 1, {Jet(ctx, 16), X(ctx, "x1", 3, Scalar(-1), 16)});
        const auto g = generalized_discriminants(cusp);
        CHECK(g.first_nonzero == 1);
        CHECK(g.entries[0].poly() == X(ctx, "x1", 3, Scalar(4), 16).poly());

        const auto r = generalized_discriminants(from_roots({1, 1, 2}));
        CHECK(r.first_nonzero == 2);
        CHECK(r.entries[0].is_zero());
        CHECK(r.entries[0].exact());
        CHECK(r.lower_exact);
        CHECK(r.entries[1].constant_term() == Scalar(2));

        const auto t = generalized_discriminants(from_roots({0, 0, 0}));
        CHECK(t.first_nonzero == 3);
        CHECK(t.entries[2].constant_term() == Scalar(3));
    }

    TEST_CASE("random roots against the Vandermonde oracle")
    {
        std::mt19937_64 rng(2024);
        for (int trial = 0; trial < 60; ++trial) {
            std::uniform_int_distribution<int> deg(1, 6);
            const int p = deg(rng);
            std::vector<Q> roots;
            for (int i = 0; i < p; ++i) {
                if (!roots.empty() && rng() % 3 == 0) {
                    roots.push_back(roots[rng() % roots.size()]);
                } else {
                    roots.push_back(oracle::random_rational(rng, 4, 3));
                }
            }
            const auto pp = from_roots(roots);
            const auto serial = hankel_minors(pp, Exec::serial);
            const auto parallel = hankel_minors(pp, Exec::parallel);
            for (int k = 1; k <= p; ++k) {
                const Scalar want(oracle::vandermonde_subset_sum(roots, k));
                CHECK(serial[static_cast<std::size_t>(k - 1)].constant_term() == want);
                CHECK(parallel[static_cast<std::size_t>(k - 1)].poly() == serial[static_cast<std::size_t>(k - 1)].poly());
            }
            std::vector<Q> distinct = roots;
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            CHECK(generalized_discriminants(pp).first_nonzero == p - static_cast<int>(distinct.size()) + 1);
        }
    }

    TEST_CASE("Berkowitz agrees with Leibniz")
    {
        std::mt19937_64 rng(8);
        for (int n = 0; n <= 6; ++n) {
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<std::vector<Q>> m(static_cast<std::size_t>(n), std::vector<Q>(static_cast<std::size_t>(n)));
                for (auto &row : m) {
                    for (auto &x : row) {
                        x = oracle::random_rational(rng, 6, 4);
                    }
                }
                const Q expect = n == 0 ? Q(1) : oracle::leibniz_det(m);
                CHECK(berkowitz_det<Q>(m, Q(0), Q(1)) == expect);
            }
        }
    }

    TEST_CASE("resultant is the product of root differences")
    {
        std::mt19937_64 rng(19);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Q> r, s;
            for (int i = 0; i < 1 + trial % 4; ++i) {
                r.push_back(oracle::random_rational(rng, 5, 2));
            }
            for (int i = 0; i < 1 + trial % 3; ++i) {
                s.push_back(oracle::random_rational(rng, 5, 2));
            }
            Q expect = 1;
            for (const Q &a : r) {
                for (const Q &b : s) {
                    expect *= a - b;
                }
            }
            CHECK(resultant(from_roots(r), from_roots(s)).constant_term() == Scalar(expect));
        }
    }

    TEST_CASE("reading a monic jet")
    {
        auto ctx = make_context({"x1", "y"});
        const Jet f = X(ctx, "y", 2, Scalar(1), 16) - X(ctx, "x1", 3, Scalar(1), 16);
        const auto p = PseudoPolynomial::from_jet(f, 1);
        CHECK(p.degree() == 2);
        CHECK(p.distinguished());
        CHECK(p.to_jet(16).poly() == f.poly());
        CHECK_THROWS_AS(PseudoPolynomial::from_jet(f * Scalar(2), 1), Error);
    }
}
