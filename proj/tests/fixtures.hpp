#ifndef ZEQ_TESTS_FIXTURES_HPP
#define ZEQ_TESTS_FIXTURES_HPP

#include <random>

#include <zeq/mero.hpp>

#include "oracles.hpp"

namespace fixture
{

// f = h^m rho + c g with g a product of powers of lines, h coprime to fg.
struct DivisorFixture {
    zeq::FactoredGerm f;
    zeq::FactoredGerm g;
    zeq::Poly h;
    zeq::Scalar c;
    int m = 0;
    zeq::Poly rho;
};

inline bool squarefree_and_coprime(const zeq::Poly &f, const zeq::Poly &g)
{
    const zeq::Poly s = zeq::gcd(f, zeq::gcd(f.derivative(0), f.derivative(1)));
    return s.is_constant() && zeq::gcd(f, g).is_constant();
}

inline DivisorFixture divisor_fixture(std::mt19937_64 &rng)
{
    using zeq::Poly;
    using zeq::Scalar;
    const Poly x1 = Poly::variable(2, 0), x2 = Poly::variable(2, 1);
    const auto small = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    while (true) {
        std::vector<std::pair<Poly, int>> gf;
        std::vector<int> slopes;
        const int nlines = small(1, 2);
        while (static_cast<int>(slopes.size()) < nlines) {
            const int a = small(-3, 3);
            if (std::find(slopes.begin(), slopes.end(), a) == slopes.end()) {
                slopes.push_back(a);
                gf.emplace_back(x1 + x2 * Scalar(a), small(1, 2));
            }
        }
        DivisorFixture fx;
        fx.g = zeq::FactoredGerm::make(Scalar(small(1, 3)), gf);
        const bool quadratic = small(0, 3) == 0;
        if (quadratic) {
            fx.h = x2 - x1.pow(2) * Scalar(small(1, 3));
            fx.m = 2;
        } else {
            int b = small(-4, 4);
            if (std::find(slopes.begin(), slopes.end(), b) != slopes.end()) {
                continue;
            }
            fx.h = x1 + x2 * Scalar(b);
            fx.m = small(2, 3);
        }
        fx.c = Scalar(oracle::random_rational(rng, 5, 4));
        if (fx.c.is_zero()) {
            continue;
        }
        fx.rho = Poly::constant(2, Scalar(small(1, 4))) + x1 * Scalar(small(-2, 2)) + x2 * Scalar(small(-2, 2));
        const Poly g = fx.g.expanded();
        const Poly f = fx.h.pow(static_cast<unsigned>(fx.m)).mul(fx.rho) + g * fx.c;
        if (f.total_degree() > 6 || !zeq::gcd(fx.h, g).is_constant() || !squarefree_and_coprime(f, g)) {
            continue;
        }
        fx.f = zeq::FactoredGerm::make(Scalar(1), {{f, 1}});
        return fx;
    }
}

// Smallest power of h dividing both coefficients of a nonzero form.
inline int form_multiplicity(const zeq::OneForm &w, const zeq::Poly &h)
{
    int k = 1 << 20;
    for (const zeq::Poly *p : {&w.a, &w.b}) {
        if (!p->is_zero()) {
            k = std::min(k, zeq::multiplicity(*p, h).first);
        }
    }
    return k;
}

} // namespace fixture

#endif
