#include <zeq/error.hpp>
#include <zeq/tower.hpp>

#include <algorithm>

namespace zeq
{

namespace
{

std::vector<int> coord_block(const VarContext &ctx, int count)
{
    std::vector<int> b;
    for (int k = 0; k < count; ++k) {
        b.push_back(ctx.coord(k));
    }
    return b;
}

std::vector<int> all_coords(const VarContext &ctx)
{
    return coord_block(ctx, ctx.ncoords());
}

bool agrees(const Jet &a, const Jet &b)
{
    return (a - b).is_zero();
}

// Product of monic polynomials in one variable, coefficient lists a_1..a_p.
PseudoPolynomial multiply(const std::vector<PseudoPolynomial> &ps, const CtxPtr &ctx, int var, int order)
{
    const Jet one = Jet::constant(ctx, Scalar(1), order);
    // Full coefficient list, leading first.
    std::vector<Jet> acc{one};
    for (const auto &p : ps) {
        std::vector<Jet> rhs{one};
        rhs.insert(rhs.end(), p.coeffs().begin(), p.coeffs().end());
        std::vector<Jet> out(acc.size() + rhs.size() - 1, Jet(ctx, order));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            for (std::size_t j = 0; j < rhs.size(); ++j) {
                out[i + j] += acc[i] * rhs[j];
            }
        }
        acc = std::move(out);
    }
    acc.erase(acc.begin());
    return PseudoPolynomial(ctx, var, std::move(acc), order);
}

struct Descent {
    const TowerOptions &opts;
    Tower tw;

    void finish_at(const Jet &g, int i, int index)
    {
        tw.termination = i == 0 ? Termination::unit_reached : Termination::trivial;
        tw.terminal = g;
        tw.terminal_index = index;
    }

    void push_level(int i, const Jet &source, int source_index, LinearChange change, PreparedForm prep)
    {
        GenDiscSequence gd = generalized_discriminants(prep.poly, opts.exec);
        tw.order = std::min({tw.order, prep.order, gd.order});
        tw.exact = tw.exact && prep.exact && source.exact() && gd.lower_exact;
        const int var = tw.ctx->coord(i - 1);
        tw.levels.push_back(TowerLevel{i, var, source, source_index, std::move(change), std::move(prep.unit),
                                       std::move(prep.poly), std::move(gd)});
    }

    // Continue below the most recent level.
    void descend()
    {
        while (true) {
            const TowerLevel &top = tw.levels.back();
            const int i = top.index - 1;
            const int l = top.disc_index();
            const Jet g = top.gendisc.first();
            if (g.is_unit()) {
                finish_at(g, i, l);
                return;
            }
            if (i == 0) {
                throw internal_error("first nonzero discriminant is a nonunit constant");
            }
            const int var = tw.ctx->coord(i - 1);
            LinearChange change = find_regular_change(g, var, coord_block(*tw.ctx, i), opts.seed + i);
            PreparedForm prep = weierstrass_prepare(change.apply(g), var);
            push_level(i, g, l, std::move(change), std::move(prep));
        }
    }
};

} // namespace

std::string to_string(Termination t)
{
    return t == Termination::unit_reached ? "unit-reached" : "trivial";
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::equisingular:
        return "equisingular";
    case Verdict::not_equisingular:
        return "not-equisingular";
    default:
        return "inconclusive";
    }
}

std::vector<std::pair<int, int>> Tower::signature() const
{
    std::vector<std::pair<int, int>> s;
    for (const auto &l : levels) {
        s.emplace_back(l.degree(), l.disc_index());
    }
    return s;
}

Tower build_tower(const Jet &f, const TowerOptions &opts)
{
    const CtxPtr &ctx = f.ctx();
    const int n = ctx->ncoords();
    if (n < 1) {
        throw precondition_error("tower needs at least one coordinate variable");
    }
    if (f.is_zero()) {
        if (f.exact()) {
            throw precondition_error("germ is identically zero");
        }
        throw inconclusive_error("germ vanishes to order " + std::to_string(f.order()) + " on truncated data");
    }
    Descent d{opts, Tower{}};
    d.tw.ctx = ctx;
    d.tw.order = f.order();
    d.tw.exact = f.exact();
    if (f.is_unit()) {
        d.finish_at(f, n, 0);
        return d.tw;
    }
    const int var = ctx->coord(n - 1);
    LinearChange change = find_regular_change(f, var, all_coords(*ctx), opts.seed + n);
    PreparedForm prep = weierstrass_prepare(change.apply(f), var);
    d.push_level(n, f, 0, std::move(change), std::move(prep));
    d.descend();
    return d.tw;
}

Tower build_tower_system(const std::vector<Jet> &gs, const TowerOptions &opts)
{
    if (gs.empty()) {
        throw precondition_error("system has no equations");
    }
    const CtxPtr &ctx = gs.front().ctx();
    const int n = ctx->ncoords();
    if (n < 1) {
        throw precondition_error("tower needs at least one coordinate variable");
    }
    Jet prod = Jet::constant(ctx, Scalar(1), gs.front().order());
    for (const auto &g : gs) {
        require_same_context(g, gs.front());
        if (g.is_zero()) {
            throw precondition_error("system member vanishes to order " + std::to_string(g.order()));
        }
        prod = prod * g;
    }
    if (prod.is_zero()) {
        throw inconclusive_error("product of the system vanishes to order " + std::to_string(prod.order()));
    }
    Descent d{opts, Tower{}};
    d.tw.ctx = ctx;
    d.tw.order = prod.order();
    d.tw.exact = prod.exact();
    if (prod.is_unit()) {
        d.finish_at(prod, n, 0);
        return d.tw;
    }
    const int var = ctx->coord(n - 1);
    LinearChange change = find_regular_change(prod, var, all_coords(*ctx), opts.seed + n);
    Jet unit = Jet::constant(ctx, Scalar(1), prod.order());
    bool exact = true;
    int order = prod.order();
    for (const auto &g : gs) {
        PreparedForm p = weierstrass_prepare(change.apply(g), var);
        unit = unit * p.unit;
        exact = exact && p.exact;
        order = std::min(order, p.order);
        if (p.poly.degree() > 0) {
            d.tw.factor_blocks.push_back(std::move(p.poly));
        }
    }
    PseudoPolynomial w = multiply(d.tw.factor_blocks, ctx, var, order);
    d.push_level(n, prod, 0, std::move(change), PreparedForm{std::move(unit), std::move(w), order, exact});
    d.descend();
    return d.tw;
}

bool TowerCheck::passed() const
{
    return terminal &&
           std::all_of(levels.begin(), levels.end(), [](const LevelCheck &c) { return c.identity && c.vanishing; });
}

TowerCheck verify_tower(const Tower &tw)
{
    TowerCheck out;
    std::optional<GenDiscSequence> recomputed;
    for (const auto &lvl : tw.levels) {
        LevelCheck c;
        c.index = lvl.index;
        Jet source = lvl.source;
        c.vanishing = true;
        if (recomputed) {
            for (int l = 1; l < lvl.source_index; ++l) {
                c.vanishing = c.vanishing && recomputed->entries[static_cast<std::size_t>(l - 1)].is_zero();
            }
            source = recomputed->entries[static_cast<std::size_t>(lvl.source_index - 1)];
        }
        const Jet lhs = lvl.change.apply(source);
        const Jet rhs = lvl.unit * lvl.poly.to_jet(lhs.order());
        c.order = std::min(lhs.order(), rhs.order());
        c.identity = agrees(lhs, rhs) && lvl.poly.distinguished();
        out.levels.push_back(c);
        recomputed = generalized_discriminants(lvl.poly);
    }
    if (recomputed && tw.terminal) {
        for (int l = 1; l < tw.terminal_index; ++l) {
            out.terminal = out.terminal && recomputed->entries[static_cast<std::size_t>(l - 1)].is_zero();
        }
        out.terminal = out.terminal && tw.terminal_index >= 1 &&
                       agrees(recomputed->entries[static_cast<std::size_t>(tw.terminal_index - 1)], *tw.terminal) &&
                       tw.terminal->is_unit();
    }
    return out;
}

Jet specialize_params(const Jet &F, const std::vector<Scalar> &values)
{
    const VarContext &ctx = *F.ctx();
    if (static_cast<int>(values.size()) != ctx.nparams) {
        throw precondition_error("expected " + std::to_string(ctx.nparams) + " parameter values");
    }
    std::vector<std::string> names(ctx.names.begin() + ctx.nparams, ctx.names.end());
    CtxPtr target = make_context(std::move(names), 0);
    std::map<std::string, Jet> subst;
    for (int k = 0; k < ctx.nparams; ++k) {
        subst.emplace(ctx.names[k], Jet::constant(target, values[static_cast<std::size_t>(k)], F.order()));
    }
    return compose(F, subst, target, true);
}

namespace
{

struct FamilyRun {
    const TowerOptions &opts;
    FamilyReport rep;
    std::vector<std::string> uncertain;
    std::optional<std::pair<Jet, std::string>> coeff_witness;

    void conclude(Verdict v, std::optional<Jet> witness, std::string reason)
    {
        if (!uncertain.empty()) {
            rep.verdict = Verdict::inconclusive;
            rep.reason = uncertain.front();
            rep.witness.reset();
            return;
        }
        if (v == Verdict::equisingular && coeff_witness) {
            rep.verdict = Verdict::not_equisingular;
            rep.witness = coeff_witness->first;
            rep.reason = coeff_witness->second;
            return;
        }
        rep.verdict = v;
        rep.witness = std::move(witness);
        rep.reason = std::move(reason);
    }
};

} // namespace

FamilyReport check_family(const Jet &F, const TowerOptions &opts)
{
    const CtxPtr &ctx = F.ctx();
    const int n = ctx->ncoords();
    if (n < 1) {
        throw precondition_error("family needs at least one coordinate variable");
    }
    FamilyRun run{opts, FamilyReport{}, {}, {}};
    run.rep.order = F.order();
    run.rep.notes.push_back("polydisc and root-localization conditions are not symbolic and are not checked");
    Jet g = F;
    for (int i = n;; --i) {
        const std::vector<int> xs = coord_block(*ctx, i);
        run.rep.order = std::min(run.rep.order, g.order());
        if (g.is_zero()) {
            if (g.exact()) {
                throw precondition_error("family is identically zero");
            }
            run.uncertain.push_back("series vanishes to order " + std::to_string(g.order()) +
                                    " on truncated data at level " + std::to_string(i));
            run.conclude(Verdict::inconclusive, std::nullopt, "");
            return run.rep;
        }
        if (g.is_unit()) {
            run.rep.terminal_unit = g;
            run.conclude(Verdict::equisingular, std::nullopt,
                         i == 0 ? "descent ends at a unit nonvanishing at t = 0" : "level is a unit");
            return run.rep;
        }
        if (i == 0) {
            run.conclude(Verdict::not_equisingular, g,
                         "bottom discriminant vanishes at t = 0 without vanishing identically");
            return run.rep;
        }
        const Jet on_axis = g.restricted_to_zero(xs);
        if (!on_axis.is_zero()) {
            run.conclude(Verdict::not_equisingular, on_axis,
                         "level " + std::to_string(i) + " does not vanish along the parameter axis");
            return run.rep;
        }
        if (!on_axis.exact()) {
            run.uncertain.push_back("vanishing along the parameter axis at level " + std::to_string(i) +
                                    " holds only to order " + std::to_string(on_axis.order()));
        }
        std::vector<int> params;
        for (int k = 0; k < ctx->nparams; ++k) {
            params.push_back(k);
        }
        const Jet central = g.restricted_to_zero(params);
        if (central.is_zero()) {
            if (!central.exact()) {
                run.uncertain.push_back("central fiber at level " + std::to_string(i) + " vanishes only to order " +
                                        std::to_string(central.order()));
                run.conclude(Verdict::inconclusive, std::nullopt, "");
                return run.rep;
            }
            run.conclude(Verdict::not_equisingular, g,
                         "level " + std::to_string(i) + " vanishes identically on the central fiber");
            return run.rep;
        }
        const int var = ctx->coord(i - 1);
        LinearChange change = find_regular_change(g, var, xs, opts.seed + i);
        PreparedForm prep = weierstrass_prepare(change.apply(g), var);
        FamilyLevel lvl{i, g, change, prep.poly.degree(), 0, prep.unit, prep.poly, true};
        const std::vector<int> lower = coord_block(*ctx, i - 1);
        for (int j = 1; j <= prep.poly.degree(); ++j) {
            const Jet a = prep.poly.coeffs()[static_cast<std::size_t>(j - 1)].restricted_to_zero(lower);
            if (!a.is_zero()) {
                lvl.coeffs_vanish = false;
                if (!run.coeff_witness) {
                    run.coeff_witness.emplace(a, "coefficient " + std::to_string(j) + " at level " +
                                                     std::to_string(i) + " does not vanish along the parameter axis");
                }
            } else if (!a.exact()) {
                run.uncertain.push_back("coefficient " + std::to_string(j) + " at level " + std::to_string(i) +
                                        " vanishes on the parameter axis only to order " + std::to_string(a.order()));
            }
        }
        const GenDiscSequence gd = generalized_discriminants(prep.poly, opts.exec);
        if (!gd.lower_exact) {
            run.uncertain.push_back("generalized discriminants below index " + std::to_string(gd.first_nonzero) +
                                    " at level " + std::to_string(i) + " vanish only to order " +
                                    std::to_string(gd.order));
        }
        run.rep.order = std::min(run.rep.order, std::min(prep.order, gd.order));
        lvl.disc_index = gd.first_nonzero;
        run.rep.levels.push_back(std::move(lvl));
        g = gd.first();
    }
}

} // namespace zeq
