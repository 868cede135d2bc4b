#ifndef ZEQ_WEIERSTRASS_HPP
#define ZEQ_WEIERSTRASS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <zeq/jet.hpp>
#include <zeq/pseudopoly.hpp>

namespace zeq
{

inline constexpr int kChangeBudget = 200;

// Invertible integer linear substitution acting on a block of variables:
// block[i] -> sum_j matrix[i][j] * block[j]. Parameters are never mixed in.
struct LinearChange {
    std::vector<int> block;
    std::vector<std::vector<long>> matrix;
    std::vector<std::vector<long>> inverse;

    static LinearChange identity(std::vector<int> block);
    bool is_identity() const;
    LinearChange inverted() const;
    Jet apply(const Jet &f) const;
    std::string str(const VarContext &ctx) const;
};

// f = unit * W modulo the certification order, W distinguished in its variable.
struct PreparedForm {
    Jet unit;
    PseudoPolynomial poly;
    int order;
    bool exact;
};

struct DivisionResult {
    Jet quotient;
    // r_0..r_{p-1}: coefficient of v^i in the remainder.
    std::vector<Jet> remainder_coeffs;
    // sum r_i v^i as a single jet.
    Jet remainder;
};

// Order of f(0, .., v, .., 0) in v; infinite when that restriction vanishes.
JetOrder regularity_order(const Jet &f, int var);

// Deterministic seeded search over shears x_j -> x_j + c_j v inside `block`
// (which must contain var). The identity wins whenever f is already regular;
// otherwise the lowest regularity order in the first productive shell wins.
LinearChange find_regular_change(const Jet &f, int var, const std::vector<int> &block, std::uint64_t seed,
                                 int budget = kChangeBudget);

PreparedForm weierstrass_prepare(const Jet &f, int var);

DivisionResult weierstrass_divide(const Jet &g, const Jet &f, int var);

} // namespace zeq

#endif
