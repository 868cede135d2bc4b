#ifndef ZEQ_DEFORM_HPP
#define ZEQ_DEFORM_HPP

#include <optional>
#include <string>
#include <vector>

#include <zeq/jet.hpp>
#include <zeq/pseudopoly.hpp>

namespace zeq
{

// A system f(x, y) = 0 with a family y(x, z) and a witness z(x).
// Contexts are matched by variable name: the system lives in (x, y), the
// family in (x, z), witness and target in x.
struct SolutionFamily {
    std::vector<Jet> system;
    std::vector<std::string> y_vars;
    std::vector<Jet> family;
    std::vector<std::string> z_vars;
    std::vector<Jet> witness;
    // Optional; an empty target skips the reproduction check.
    std::vector<Jet> target;
};

struct FamilyCheck {
    std::vector<Jet> residuals;
    bool residual_ok = false;
    std::vector<Jet> reproduced;
    bool target_supplied = false;
    bool reproduce_ok = false;
    int order = 0;

    bool passed() const
    {
        return residual_ok && reproduce_ok;
    }
};

FamilyCheck verify_family(const SolutionFamily &sf, int order);

// sigma[i], tau[i]: number of leading x and z variables y_i may use.
struct NestedShape {
    std::vector<int> sigma;
    std::vector<int> tau;
};

struct NestedCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

NestedCheck verify_nested(const SolutionFamily &sf, const NestedShape &shape);

// The cusp family (x^(3e) z^3, x^(2e) z^2) through a given solution of
// y1^2 = y2^3 in one variable.
SolutionFamily binomial_family(const Jet &y1, const Jet &y2);

// Tower data depending on auxiliary variables z. The context holds
// x_1..x_n followed by the z variables; levels[k] is f_{n-k} in x_{n-k}
// with coefficients in (x_1..x_{n-k-1}, z). units[k] and indices[k] are the
// u_i and l_{i+1} of the identity relating levels[k] and levels[k+1].
struct TowerSolution {
    CtxPtr ctx;
    int n = 0;
    std::vector<PseudoPolynomial> levels;
    std::vector<Jet> units;
    std::vector<int> indices;
    std::optional<Jet> bottom_unit;
    int bottom_index = 0;
    // z_j(x) in the x-only context.
    std::vector<Jet> witness;
    // tau[k]: number of z variables levels[k] may use.
    std::vector<int> tau;
};

struct DeformationResult {
    // F(t, x) in the context (t; x_1..x_n).
    Jet family;
    Jet at_one;
    Jet at_zero;
    bool identities_ok = false;
    bool nested_ok = false;
    std::optional<bool> matches_original;
    bool fiber_polynomial = false;
    std::vector<std::string> failures;
    int order = 0;
};

DeformationResult build_deformation(const TowerSolution &sol, const std::optional<Jet> &original = std::nullopt);

} // namespace zeq

#endif
