#include <zeq/error.hpp>
#include <zeq/weierstrass.hpp>

#include <algorithm>
#include <random>

namespace zeq
{

namespace
{

int ceil_div(int a, int b)
{
    return a <= 0 ? 0 : (a + b - 1) / b;
}

int xdeg(const Monomial &m, int var)
{
    return m.degree() - m.e[var];
}

// Terms of a with x'-degree (degree ignoring var) equal to k.
Poly xdeg_part(const Poly &a, int var, int k)
{
    Poly r(a.nvars());
    for (const auto &[m, c] : a.terms()) {
        if (xdeg(m, var) == k) {
            r.add_term(m, c);
        }
    }
    return r;
}

// x'-degree k part of a*b.
Poly product_xdeg_part(const Poly &a, const Poly &b, int var, int k)
{
    Poly r(a.nvars());
    for (const auto &[ma, ca] : a.terms()) {
        const int da = xdeg(ma, var);
        if (da > k) {
            continue;
        }
        for (const auto &[mb, cb] : b.terms()) {
            if (da + xdeg(mb, var) == k) {
                r.add_term(ma * mb, ca * cb);
            }
        }
    }
    return r;
}

Poly drop_xdeg_from(const Poly &a, int var, int limit)
{
    Poly r(a.nvars());
    for (const auto &[m, c] : a.terms()) {
        if (xdeg(m, var) < limit) {
            r.add_term(m, c);
        }
    }
    return r;
}

Monomial var_power(int var, int k)
{
    Monomial m;
    m.e[var] = static_cast<std::uint16_t>(k);
    return m;
}

// Factorization f = u * W in (K[x']/(x')^K)[v] by linear Hensel lifting from
// f(0, v) = v^p * e(v).
struct HenselResult {
    Poly w;
    Poly u;
};

HenselResult hensel_prepare(const Poly &f, int var, int p, int precision)
{
    const int n = f.nvars();
    // e(v) = f(0, v) / v^p as a univariate list; t = 1/e mod v^p.
    std::vector<Scalar> e;
    for (const auto &[m, c] : f.terms()) {
        if (xdeg(m, var) != 0) {
            continue;
        }
        const int k = m.e[var] - p;
        if (k < 0) {
            throw internal_error("regularity order inconsistent with the series");
        }
        if (static_cast<int>(e.size()) <= k) {
            e.resize(static_cast<std::size_t>(k) + 1, Scalar(0));
        }
        e[static_cast<std::size_t>(k)] = c;
    }
    std::vector<Scalar> t(static_cast<std::size_t>(p), Scalar(0));
    if (p > 0) {
        const Scalar inv0 = e[0].inverse();
        t[0] = inv0;
        for (int k = 1; k < p; ++k) {
            Scalar acc(0);
            for (int j = 1; j <= k && j < static_cast<int>(e.size()); ++j) {
                acc += e[static_cast<std::size_t>(j)] * t[static_cast<std::size_t>(k - j)];
            }
            t[static_cast<std::size_t>(k)] = -(acc * inv0);
        }
    }
    Poly e_poly(n);
    for (std::size_t k = 0; k < e.size(); ++k) {
        e_poly.add_term(var_power(var, static_cast<int>(k)), e[k]);
    }

    HenselResult h{Poly::monomial(n, var_power(var, p), Scalar(1)), e_poly};
    for (int k = 1; k < precision; ++k) {
        Poly err = xdeg_part(f, var, k) - product_xdeg_part(h.w, h.u, var, k);
        if (err.is_zero()) {
            continue;
        }
        // dW = (err * t) mod v^p
        Poly dw(n);
        for (const auto &[m, c] : err.terms()) {
            for (int j = 0; j < p && m.e[var] + j < p; ++j) {
                if (t[static_cast<std::size_t>(j)].is_zero()) {
                    continue;
                }
                Monomial mm = m;
                mm.e[var] = static_cast<std::uint16_t>(mm.e[var] + j);
                dw.add_term(mm, c * t[static_cast<std::size_t>(j)]);
            }
        }
        // du = (err - dW * e) / v^p, an exact shift.
        Poly rest = err - dw.mul(e_poly);
        Poly du(n);
        for (const auto &[m, c] : rest.terms()) {
            if (m.e[var] < p) {
                throw internal_error("Hensel step left a low-degree residue");
            }
            Monomial mm = m;
            mm.e[var] = static_cast<std::uint16_t>(mm.e[var] - p);
            du.add_term(mm, c);
        }
        h.w += dw;
        h.u += du;
    }
    return h;
}

} // namespace

LinearChange LinearChange::identity(std::vector<int> block)
{
    LinearChange c;
    const std::size_t b = block.size();
    c.block = std::move(block);
    c.matrix.assign(b, std::vector<long>(b, 0));
    for (std::size_t i = 0; i < b; ++i) {
        c.matrix[i][i] = 1;
    }
    c.inverse = c.matrix;
    return c;
}

bool LinearChange::is_identity() const
{
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            if (matrix[i][j] != (i == j ? 1 : 0)) {
                return false;
            }
        }
    }
    return true;
}

LinearChange LinearChange::inverted() const
{
    LinearChange c = *this;
    std::swap(c.matrix, c.inverse);
    return c;
}

Jet LinearChange::apply(const Jet &f) const
{
    if (is_identity()) {
        return f;
    }
    const int n = f.ctx()->size();
    std::map<std::string, Jet> subst;
    for (std::size_t i = 0; i < block.size(); ++i) {
        Poly image(n);
        for (std::size_t j = 0; j < block.size(); ++j) {
            if (matrix[i][j] != 0) {
                image += Poly::variable(n, block[j]) * Scalar(matrix[i][j]);
            }
        }
        subst.emplace(f.ctx()->names[block[i]], Jet::from_poly(f.ctx(), image, f.order()));
    }
    return compose(f, subst, f.ctx());
}

std::string LinearChange::str(const VarContext &ctx) const
{
    if (is_identity()) {
        return "identity";
    }
    std::string out;
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (!out.empty()) {
            out += ", ";
        }
        Poly image(ctx.size());
        for (std::size_t j = 0; j < block.size(); ++j) {
            image += Poly::variable(ctx.size(), block[j]) * Scalar(matrix[i][j]);
        }
        out += ctx.names[block[i]] + " -> " + image.str(ctx.names);
    }
    return out;
}

JetOrder regularity_order(const Jet &f, int var)
{
    if (var < 0 || var >= f.ctx()->size()) {
        throw precondition_error("regularity variable outside the context");
    }
    std::optional<int> best;
    for (const auto &[m, c] : f.poly().terms()) {
        if (xdeg(m, var) == 0) {
            best = best ? std::min<int>(*best, m.e[var]) : m.e[var];
        }
    }
    return JetOrder{best, best.has_value() || f.exact()};
}

LinearChange find_regular_change(const Jet &f, int var, const std::vector<int> &block, std::uint64_t seed, int budget)
{
    if (f.is_zero()) {
        if (!f.exact()) {
            throw inconclusive_error("series vanishes to order " + std::to_string(f.order()) +
                                     " on truncated data; no regular direction can be certified");
        }
        throw precondition_error("cannot search a regular direction: series is identically zero");
    }
    auto pos = std::find(block.begin(), block.end(), var);
    if (pos == block.end()) {
        throw precondition_error("distinguished variable outside the change block");
    }
    const std::size_t vpos = static_cast<std::size_t>(pos - block.begin());
    if (!regularity_order(f, var).infinite()) {
        return LinearChange::identity(block);
    }
    const std::size_t free = block.size() - 1;
    std::mt19937_64 rng(seed);
    int tried = 0;
    for (long shell = 1; free > 0 && tried < budget; ++shell) {
        // All c in [-shell, shell]^free with max |c_j| = shell.
        std::vector<std::vector<long>> cands;
        std::vector<long> c(free, -shell);
        while (true) {
            long mx = 0;
            for (long x : c) {
                mx = std::max(mx, std::labs(x));
            }
            if (mx == shell) {
                cands.push_back(c);
            }
            std::size_t k = 0;
            while (k < free && c[k] == shell) {
                c[k] = -shell;
                ++k;
            }
            if (k == free) {
                break;
            }
            ++c[k];
        }
        for (std::size_t i = cands.size(); i > 1; --i) {
            std::swap(cands[i - 1], cands[static_cast<std::size_t>(rng() % i)]);
        }
        std::optional<LinearChange> best;
        int best_order = 0;
        for (const auto &cv : cands) {
            if (tried >= budget) {
                break;
            }
            ++tried;
            LinearChange lc = LinearChange::identity(block);
            std::size_t k = 0;
            for (std::size_t i = 0; i < block.size(); ++i) {
                if (i == vpos) {
                    continue;
                }
                lc.matrix[i][vpos] = cv[k];
                lc.inverse[i][vpos] = -cv[k];
                ++k;
            }
            const JetOrder o = regularity_order(lc.apply(f), var);
            if (!o.infinite() && (!best || *o.value < best_order)) {
                best = lc;
                best_order = *o.value;
            }
        }
        if (best) {
            return *best;
        }
    }
    if (!f.exact()) {
        throw inconclusive_error("no candidate change within a budget of " + std::to_string(budget) +
                                 " makes the truncated series regular to order " + std::to_string(f.order()));
    }
    throw precondition_error("no regular direction for '" + f.ctx()->names[var] + "' within a budget of " +
                             std::to_string(budget) + " candidate changes");
}

PreparedForm weierstrass_prepare(const Jet &f, int var)
{
    const JetOrder reg = regularity_order(f, var);
    if (reg.infinite()) {
        if (!reg.certain) {
            throw inconclusive_error("restriction to the '" + f.ctx()->names[var] + "' axis vanishes to order " +
                                     std::to_string(f.order()) + " on truncated data");
        }
        throw precondition_error("series is not regular in '" + f.ctx()->names[var] + "'");
    }
    const int p = *reg.value;
    const int N = f.order();
    const CtxPtr &ctx = f.ctx();
    if (p == 0) {
        return PreparedForm{f, PseudoPolynomial(ctx, var, {}, N), N, f.exact()};
    }
    HenselResult h = hensel_prepare(f.poly(), var, p, N);
    const bool exact = f.exact() && (f.poly() - h.w.mul(h.u)).is_zero();

    const auto wc = h.w.coeffs_in(var);
    std::vector<Jet> a;
    for (int j = 1; j <= p; ++j) {
        const int ord = f.exact() ? N : std::min(N, ceil_div(N - p + j, p));
        a.push_back(Jet::from_poly(ctx, drop_xdeg_from(wc[static_cast<std::size_t>(p - j)], var, N), ord, exact));
    }
    const int unit_order = f.exact() ? N : std::min(N, ceil_div(N - p, p));
    Jet unit = Jet::from_poly(ctx, drop_xdeg_from(h.u, var, N), unit_order, exact);
    PseudoPolynomial w(ctx, var, std::move(a), N);
    const int ord = std::min(unit.order(), w.order());
    return PreparedForm{std::move(unit), std::move(w), ord, exact && unit.exact() && w.exact()};
}

DivisionResult weierstrass_divide(const Jet &g, const Jet &f, int var)
{
    require_same_context(g, f);
    const PreparedForm prep = weierstrass_prepare(f, var);
    const int p = prep.poly.degree();
    const int N = std::min(f.order(), g.order());
    const CtxPtr &ctx = f.ctx();
    const int n = ctx->size();
    const bool inputs_exact = f.exact() && g.exact();
    const bool poly_division = inputs_exact && prep.exact;

    // Long division of g by the monic W in v; coefficients kept mod (x')^N
    // unless everything is polynomial.
    std::vector<Poly> rem = g.poly().coeffs_in(var);
    std::vector<Poly> wc{Poly::constant(n, Scalar(1))};
    for (const auto &a : prep.poly.coeffs()) {
        wc.push_back(a.poly());
    }
    Poly quot(n);
    for (int d = static_cast<int>(rem.size()) - 1; d >= p; --d) {
        Poly c = rem[static_cast<std::size_t>(d)];
        if (c.is_zero()) {
            continue;
        }
        quot += c.mul(Poly::monomial(n, var_power(var, d - p), Scalar(1)));
        for (int j = 0; j <= p; ++j) {
            Poly sub = c.mul(wc[static_cast<std::size_t>(j)]);
            if (!poly_division) {
                sub = drop_xdeg_from(sub, var, N);
            }
            rem[static_cast<std::size_t>(d - j)] -= sub;
        }
    }
    rem.resize(static_cast<std::size_t>(std::max(p, 0)), Poly(n));

    const Jet unit_inv = prep.unit.with_order(std::min(prep.unit.order(), N)).invert_unit();
    Jet q = Jet::from_poly(ctx, quot, N, poly_division).mul(unit_inv);
    const bool q_exact = poly_division && (quot.is_zero() || prep.unit.poly().is_constant());
    if (q_exact) {
        q = Jet::from_poly(ctx, quot * prep.unit.constant_term().inverse(), N, true);
    }

    std::vector<Jet> rc;
    Poly rsum(n);
    int rorder = N;
    for (int i = 0; i < p; ++i) {
        const int ord = inputs_exact ? N : std::min(N, ceil_div(N - i, p));
        rc.push_back(Jet::from_poly(ctx, rem[static_cast<std::size_t>(i)], ord, poly_division));
        rsum += rc.back().poly().mul(Poly::monomial(n, var_power(var, i), Scalar(1)));
        if (!poly_division) {
            rorder = std::min(rorder, ord + i);
        }
    }
    if (!inputs_exact) {
        q = q.with_order(std::min(q.order(), ceil_div(N - p, p)));
    }
    Jet r = Jet::from_poly(ctx, rsum, rorder, poly_division);
    return DivisionResult{std::move(q), std::move(rc), std::move(r)};
}

} // namespace zeq
