#include <zeq/deform.hpp>
#include <zeq/error.hpp>

#include <algorithm>
#include <gmpxx.h>

namespace zeq
{

namespace
{

int min_order(const std::vector<Jet> &js, int order)
{
    for (const auto &j : js) {
        order = std::min(order, j.order());
    }
    return order;
}

Jet coarsen(const Jet &j, int order)
{
    return j.with_order(std::min(order, j.order()));
}

CtxPtr x_context(const SolutionFamily &sf)
{
    if (!sf.witness.empty()) {
        return sf.witness.front().ctx();
    }
    if (!sf.target.empty()) {
        return sf.target.front().ctx();
    }
    const VarContext &fc = *sf.family.front().ctx();
    std::vector<std::string> names;
    for (const auto &nm : fc.names) {
        if (std::find(sf.z_vars.begin(), sf.z_vars.end(), nm) == sf.z_vars.end()) {
            names.push_back(nm);
        }
    }
    return make_context(std::move(names));
}

std::optional<mpz_class> exact_cube_root(const mpz_class &v)
{
    mpz_class r;
    const mpz_class a = abs(v);
    if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), 3) == 0) {
        return std::nullopt;
    }
    return v < 0 ? mpz_class(-r) : r;
}

Scalar rational_cube_root(const Scalar &c)
{
    if (!c.is_rational()) {
        throw precondition_error("leading coefficient " + c.str() + " has no cube root in the rationals");
    }
    const mpq_class q = c.rational();
    const auto n = exact_cube_root(q.get_num());
    const auto d = exact_cube_root(q.get_den());
    if (!n || !d) {
        throw precondition_error("leading coefficient " + c.str() + " has no cube root in the rationals");
    }
    return Scalar(mpq_class(*n, *d));
}

// Cube root of a one-variable unit, solved coefficient by coefficient.
Jet unit_cube_root(const Jet &w)
{
    const CtxPtr &ctx = w.ctx();
    const int M = w.order();
    const Scalar r0 = rational_cube_root(w.constant_term());
    const Scalar denom = (Scalar(3) * r0 * r0).inverse();
    Poly r = Poly::constant(ctx->size(), r0);
    for (int k = 1; k < M; ++k) {
        const Poly cube = r.mul_truncated(r, k + 1).mul_truncated(r, k + 1);
        Monomial m;
        m.e[0] = static_cast<std::uint16_t>(k);
        const Scalar gap = w.poly().coeff(m) - cube.coeff(m);
        if (!gap.is_zero()) {
            r.add_term(m, gap * denom);
        }
    }
    const bool exact = w.exact() && r.pow(3) == w.poly();
    return Jet::from_poly(ctx, r, M, exact);
}

bool only_uses(const Jet &j, const std::vector<int> &allowed, std::string &bad)
{
    const VarContext &ctx = *j.ctx();
    for (int v = 0; v < ctx.size(); ++v) {
        if (j.involves(v) && std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
            bad = ctx.names[v];
            return false;
        }
    }
    return true;
}

// Indices of named variables in ctx (absent names skipped).
std::vector<int> indices_of(const VarContext &ctx, const std::vector<std::string> &names)
{
    std::vector<int> out;
    for (const auto &nm : names) {
        const int k = ctx.index_of(nm);
        if (k >= 0) {
            out.push_back(k);
        }
    }
    return out;
}

} // namespace

FamilyCheck verify_family(const SolutionFamily &sf, int order)
{
    if (sf.family.size() != sf.y_vars.size()) {
        throw precondition_error("family has " + std::to_string(sf.family.size()) + " entries for " +
                                 std::to_string(sf.y_vars.size()) + " unknowns");
    }
    if (sf.witness.size() != sf.z_vars.size()) {
        throw precondition_error("witness has " + std::to_string(sf.witness.size()) + " entries for " +
                                 std::to_string(sf.z_vars.size()) + " auxiliary variables");
    }
    if (!sf.target.empty() && sf.target.size() != sf.family.size()) {
        throw precondition_error("target arity differs from the family");
    }
    if (sf.family.empty()) {
        throw precondition_error("empty family");
    }
    const CtxPtr fctx = sf.family.front().ctx();
    for (const auto &y : sf.family) {
        require_same_context(y, sf.family.front());
    }
    for (const auto &z : sf.witness) {
        if (!z.constant_term().is_zero()) {
            throw precondition_error("witness series must vanish at the origin: " + z.str());
        }
    }
    FamilyCheck out;
    out.order = min_order(sf.family, min_order(sf.system, order));

    std::map<std::string, Jet> ysub;
    for (std::size_t i = 0; i < sf.family.size(); ++i) {
        ysub.emplace(sf.y_vars[i], sf.family[i]);
    }
    out.residual_ok = true;
    for (const auto &f : sf.system) {
        Jet r = coarsen(compose(f, ysub, fctx, true), order);
        out.order = std::min(out.order, r.order());
        out.residual_ok = out.residual_ok && r.is_zero();
        out.residuals.push_back(std::move(r));
    }

    const CtxPtr xctx = x_context(sf);
    std::map<std::string, Jet> zsub;
    for (std::size_t j = 0; j < sf.witness.size(); ++j) {
        zsub.emplace(sf.z_vars[j], sf.witness[j].in_context(xctx));
    }
    out.target_supplied = !sf.target.empty();
    out.reproduce_ok = true;
    for (std::size_t i = 0; i < sf.family.size(); ++i) {
        Jet y = coarsen(compose(sf.family[i], zsub, xctx), order);
        if (out.target_supplied) {
            const Jet diff = coarsen(y - sf.target[i].in_context(xctx), order);
            out.order = std::min(out.order, diff.order());
            out.reproduce_ok = out.reproduce_ok && diff.is_zero();
        }
        out.reproduced.push_back(std::move(y));
    }
    return out;
}

NestedCheck verify_nested(const SolutionFamily &sf, const NestedShape &shape)
{
    if (shape.sigma.size() != sf.family.size() || shape.tau.size() != sf.family.size()) {
        throw precondition_error("nested shape needs one sigma and one tau per family entry");
    }
    const VarContext &fc = *sf.family.front().ctx();
    std::vector<std::string> xnames;
    for (const auto &nm : fc.names) {
        if (std::find(sf.z_vars.begin(), sf.z_vars.end(), nm) == sf.z_vars.end()) {
            xnames.push_back(nm);
        }
    }
    for (std::size_t i = 0; i < shape.sigma.size(); ++i) {
        const int s = shape.sigma[i];
        const int t = shape.tau[i];
        if (s < 0 || s > static_cast<int>(xnames.size()) || t < 0 || t > static_cast<int>(sf.z_vars.size())) {
            throw precondition_error("nested shape bound out of range at entry " + std::to_string(i + 1));
        }
        if (i > 0 && (s < shape.sigma[i - 1] || t < shape.tau[i - 1])) {
            throw precondition_error("nested shape must be nondecreasing");
        }
    }
    NestedCheck out;
    for (std::size_t i = 0; i < sf.family.size(); ++i) {
        const int s = shape.sigma[i];
        const int t = shape.tau[i];
        std::vector<std::string> allowed(xnames.begin(), xnames.begin() + s);
        allowed.insert(allowed.end(), sf.z_vars.begin(), sf.z_vars.begin() + t);
        std::string bad;
        if (!only_uses(sf.family[i], indices_of(fc, allowed), bad)) {
            out.ok = false;
            out.violations.push_back("y" + std::to_string(i + 1) + " involves " + bad);
        }
        for (int j = 0; j < t; ++j) {
            const Jet &z = sf.witness[static_cast<std::size_t>(j)];
            const std::vector<std::string> xs(xnames.begin(), xnames.begin() + s);
            if (!only_uses(z, indices_of(*z.ctx(), xs), bad)) {
                out.ok = false;
                out.violations.push_back(sf.z_vars[static_cast<std::size_t>(j)] + "(x) involves " + bad +
                                         " but feeds y" + std::to_string(i + 1));
            }
        }
    }
    return out;
}

SolutionFamily binomial_family(const Jet &y1, const Jet &y2)
{
    require_same_context(y1, y2);
    const CtxPtr &ctx = y1.ctx();
    if (ctx->size() != 1) {
        throw precondition_error("binomial family needs exactly one variable");
    }
    const std::string x = ctx->names[0];
    if (x == "y1" || x == "y2" || x == "z") {
        throw precondition_error("variable name '" + x + "' clashes with the family's own names");
    }
    if (y1.is_zero()) {
        throw precondition_error("not a solution: y1 vanishes to order " + std::to_string(y1.order()));
    }
    const int d = *y1.valuation().value;
    if (d == 0 || d % 3 != 0) {
        throw precondition_error("not a solution: ord(y1) = " + std::to_string(d) + " is not a positive multiple of 3");
    }
    const int e = d / 3 - 1;
    const int N = std::min(y1.order(), y2.order());

    Poly shifted(1);
    for (const auto &[m, c] : y1.poly().terms()) {
        Monomial mm = m;
        mm.e[0] = static_cast<std::uint16_t>(mm.e[0] - d);
        shifted.add_term(mm, c);
    }
    const Jet root = unit_cube_root(Jet::from_poly(ctx, shifted, y1.order() - d, y1.exact()));
    const Poly xp = Poly::variable(1, 0);
    const Jet zhat = root.exact() ? Jet::from_poly(ctx, xp.mul(root.poly()), N, true)
                                  : Jet::from_poly(ctx, xp.mul(root.poly()), root.order() + 1, false);

    const Jet xe = Jet::from_poly(ctx, xp.pow(static_cast<unsigned>(2 * e)), N);
    const Jet diff = xe * zhat * zhat - y2;
    if (!diff.is_zero()) {
        throw precondition_error("not a solution: y2 differs from x^(2e) z^2 by " + diff.str());
    }

    SolutionFamily sf;
    const CtxPtr sys = make_context({x, "y1", "y2"});
    const Poly Y1 = Poly::variable(3, 1);
    const Poly Y2 = Poly::variable(3, 2);
    sf.system.push_back(Jet::from_poly(sys, Y1.pow(2) - Y2.pow(3), N));
    sf.y_vars = {"y1", "y2"};
    const CtxPtr fam = make_context({x, "z"});
    const Poly X = Poly::variable(2, 0);
    const Poly Z = Poly::variable(2, 1);
    sf.family.push_back(Jet::from_poly(fam, X.pow(static_cast<unsigned>(3 * e)).mul(Z.pow(3)), N));
    sf.family.push_back(Jet::from_poly(fam, X.pow(static_cast<unsigned>(2 * e)).mul(Z.pow(2)), N));
    sf.z_vars = {"z"};
    sf.witness.push_back(zhat);
    sf.target = {y1, y2};
    return sf;
}

DeformationResult build_deformation(const TowerSolution &sol, const std::optional<Jet> &original)
{
    const VarContext &ctx = *sol.ctx;
    const int L = static_cast<int>(sol.levels.size());
    if (L < 1 || sol.n < L || sol.n > ctx.size()) {
        throw precondition_error("tower solution needs between 1 and n levels");
    }
    if (static_cast<int>(sol.units.size()) != L - 1 || static_cast<int>(sol.indices.size()) != L - 1 ||
        static_cast<int>(sol.tau.size()) != L) {
        throw precondition_error("tower solution needs one unit and index per descent and one tau per level");
    }
    if (ctx.index_of("t") >= 0) {
        throw precondition_error("variable name 't' is reserved for the deformation parameter");
    }
    std::vector<std::string> xnames(ctx.names.begin(), ctx.names.begin() + sol.n);
    std::vector<std::string> znames(ctx.names.begin() + sol.n, ctx.names.end());
    if (sol.witness.size() != znames.size()) {
        throw precondition_error("one witness series per auxiliary variable is required");
    }
    for (const auto &z : sol.witness) {
        if (!z.constant_term().is_zero()) {
            throw precondition_error("witness series must vanish at the origin: " + z.str());
        }
    }
    for (int k = 0; k < L; ++k) {
        if (sol.levels[static_cast<std::size_t>(k)].var() != sol.n - 1 - k) {
            throw precondition_error("level " + std::to_string(k + 1) + " is not in the expected coordinate");
        }
        if (k > 0 && sol.tau[static_cast<std::size_t>(k)] > sol.tau[static_cast<std::size_t>(k - 1)]) {
            throw precondition_error("tau must not grow down the tower");
        }
    }

    DeformationResult out{Jet(sol.ctx, 1), Jet(sol.ctx, 1), Jet(sol.ctx, 1), false, false, std::nullopt, false, {}, 0};
    out.identities_ok = true;
    out.order = sol.levels.front().order();
    for (int k = 0; k < L; ++k) {
        const auto &lvl = sol.levels[static_cast<std::size_t>(k)];
        const int i = sol.n - k;
        const GenDiscSequence gd = generalized_discriminants(lvl);
        const int idx = k + 1 < L ? sol.indices[static_cast<std::size_t>(k)] : sol.bottom_index;
        if (idx < 1 || idx > lvl.degree()) {
            throw precondition_error("discriminant index out of range at level " + std::to_string(i));
        }
        for (int l = 1; l < idx; ++l) {
            if (!gd.entries[static_cast<std::size_t>(l - 1)].is_zero()) {
                out.identities_ok = false;
                out.failures.push_back("discriminant " + std::to_string(l) + " of level " + std::to_string(i) +
                                       " does not vanish");
            }
        }
        const Jet &delta = gd.entries[static_cast<std::size_t>(idx - 1)];
        Jet expected = Jet(sol.ctx, delta.order());
        if (k + 1 < L) {
            const auto &next = sol.levels[static_cast<std::size_t>(k + 1)];
            expected = sol.units[static_cast<std::size_t>(k)] * next.to_jet(delta.order());
        } else if (sol.bottom_unit) {
            expected = *sol.bottom_unit;
            if (!expected.is_unit()) {
                out.failures.push_back("bottom unit vanishes at the origin");
                out.identities_ok = false;
            }
        } else {
            throw precondition_error("bottom unit is required for the last level");
        }
        if (!(delta - expected).is_zero()) {
            out.identities_ok = false;
            out.failures.push_back("descent identity fails below level " + std::to_string(i));
        }
        out.order = std::min({out.order, delta.order(), expected.order()});
    }

    // Nested shape: level i coefficients use x_1..x_{i-1} and z_1..z_{tau}.
    out.nested_ok = true;
    for (int k = 0; k < L; ++k) {
        const int i = sol.n - k;
        const int tau = sol.tau[static_cast<std::size_t>(k)];
        std::vector<std::string> allowed(xnames.begin(), xnames.begin() + (i - 1));
        allowed.insert(allowed.end(), znames.begin(), znames.begin() + tau);
        const std::vector<int> ok = indices_of(ctx, allowed);
        std::string bad;
        for (const auto &a : sol.levels[static_cast<std::size_t>(k)].coeffs()) {
            if (!only_uses(a, ok, bad)) {
                out.nested_ok = false;
                out.failures.push_back("a coefficient of level " + std::to_string(i) + " involves " + bad);
            }
        }
        if (k + 1 < L && !only_uses(sol.units[static_cast<std::size_t>(k)], ok, bad)) {
            out.nested_ok = false;
            out.failures.push_back("unit below level " + std::to_string(i) + " involves " + bad);
        }
        for (int j = 0; j < tau; ++j) {
            const Jet &z = sol.witness[static_cast<std::size_t>(j)];
            const std::vector<std::string> xs(xnames.begin(), xnames.begin() + (i - 1));
            if (!only_uses(z, indices_of(*z.ctx(), xs), bad)) {
                out.nested_ok = false;
                out.failures.push_back(znames[static_cast<std::size_t>(j)] + "(x) involves " + bad +
                                       " but feeds level " + std::to_string(i));
            }
        }
    }

    const auto &top = sol.levels.front();
    const Jet topj = top.to_jet(top.order() + top.degree());
    std::vector<std::string> tnames{"t"};
    tnames.insert(tnames.end(), xnames.begin(), xnames.end());
    const CtxPtr tctx = make_context(tnames, 1);
    const CtxPtr xctx = make_context(xnames);
    const Jet t = Jet::variable(tctx, 0, topj.order());
    std::map<std::string, Jet> at_t, at_one, at_zero;
    for (std::size_t j = 0; j < znames.size(); ++j) {
        at_t.emplace(znames[j], t * sol.witness[j].in_context(tctx));
        at_one.emplace(znames[j], sol.witness[j].in_context(xctx));
        at_zero.emplace(znames[j], Jet(xctx, topj.order()));
    }
    out.family = compose(topj, at_t, tctx);
    out.at_one = compose(topj, at_one, xctx);
    out.at_zero = compose(topj, at_zero, xctx);
    out.order = std::min(out.order, out.family.order());
    out.fiber_polynomial = out.at_zero.exact();
    if (original) {
        const Jet diff = out.at_one - original->in_context(xctx);
        out.matches_original = diff.is_zero();
        if (!diff.is_zero()) {
            out.failures.push_back("F(1, x) differs from the original germ");
        }
    }
    return out;
}

} // namespace zeq
