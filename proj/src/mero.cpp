#include <zeq/determinant.hpp>
#include <zeq/error.hpp>
#include <zeq/mero.hpp>
#include <zeq/weierstrass.hpp>

#include <algorithm>
#include <gmpxx.h>

namespace zeq
{

namespace
{

constexpr int kX1 = 0;
constexpr int kX2 = 1;
constexpr int kC = 2;
// Largest |coefficient| whose divisors the rational root search enumerates.
const mpz_class kRootSearchCap("1000000000000");

bool is_rational_poly(const Poly &p)
{
    return std::all_of(p.terms().begin(), p.terms().end(), [](const auto &t) { return t.second.is_rational(); });
}

using QPoly = std::vector<mpq_class>;

void trim(QPoly &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

QPoly qrem(QPoly a, const QPoly &b)
{
    trim(a);
    while (a.size() >= b.size()) {
        const mpq_class f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[shift + i] -= f * b[i];
        }
        trim(a);
    }
    return a;
}

int sign_changes(const std::vector<int> &signs)
{
    int n = 0;
    int last = 0;
    for (int s : signs) {
        if (s != 0) {
            n += last != 0 && s != last;
            last = s;
        }
    }
    return n;
}

// Every root of the minimal polynomial is real (Sturm count).
bool totally_real(const ExtField &field)
{
    QPoly p0 = field.minpoly;
    QPoly p1;
    for (std::size_t i = 1; i < p0.size(); ++i) {
        p1.push_back(p0[i] * static_cast<long>(i));
    }
    std::vector<QPoly> seq{p0, p1};
    while (seq.back().size() > 1) {
        QPoly r = qrem(seq[seq.size() - 2], seq.back());
        if (r.empty()) {
            break;
        }
        for (auto &c : r) {
            c = -c;
        }
        seq.push_back(std::move(r));
    }
    std::vector<int> at_pos, at_neg;
    for (const auto &q : seq) {
        const int lc = sgn(q.back());
        at_pos.push_back(lc);
        at_neg.push_back(q.size() % 2 == 1 ? lc : -lc);
    }
    return sign_changes(at_neg) - sign_changes(at_pos) == static_cast<int>(field.degree());
}

bool real_scalar(const Scalar &c)
{
    return c.is_rational() || totally_real(*c.field());
}

bool real_poly(const Poly &p)
{
    return std::all_of(p.terms().begin(), p.terms().end(), [](const auto &t) { return real_scalar(t.second); });
}

Poly divisor_product(const std::vector<DivisorRecord> &rs, int nvars)
{
    Poly p = Poly::constant(nvars, Scalar(1));
    for (const auto &r : rs) {
        p = p * r.h.pow(static_cast<unsigned>(r.mu));
    }
    return p;
}

[[noreturn]] void lemma_violation(const std::string &what)
{
    throw precondition_error("lemma violation: " + what + " (is every input factor irreducible?)");
}

template <typename T>
std::pair<T, T> log_form(const std::vector<std::pair<T, int>> &fs, const std::vector<std::pair<T, int>> &gs,
                         const T &zero, const T &one)
{
    std::vector<std::pair<T, long>> all;
    for (const auto &[h, l] : fs) {
        all.emplace_back(h, static_cast<long>(l));
    }
    for (const auto &[h, k] : gs) {
        all.emplace_back(h, -static_cast<long>(k));
    }
    T a = zero;
    T b = zero;
    for (std::size_t i = 0; i < all.size(); ++i) {
        T others = one;
        for (std::size_t m = 0; m < all.size(); ++m) {
            if (m != i) {
                others = others * all[m].first;
            }
        }
        const Scalar w(all[i].second);
        a = a + others * all[i].first.derivative(kX1) * w;
        b = b + others * all[i].first.derivative(kX2) * w;
    }
    return {a, b};
}

// Univariate helpers on one-variable Polys.
Poly univariate(const Poly &p, int var)
{
    Poly out(1);
    for (const auto &[m, c] : p.terms()) {
        Monomial mm;
        mm.e[0] = m.e[var];
        out.add_term(mm, c);
    }
    return out;
}

std::vector<mpz_class> divisors(mpz_class n)
{
    n = abs(n);
    if (n > kRootSearchCap) {
        throw precondition_error("rational root search exceeds its cap of 10^12");
    }
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) {
                out.push_back(n / d);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Scalar eval_univariate(const Poly &p, const Scalar &x)
{
    Scalar acc(0);
    for (const auto &[m, c] : p.terms()) {
        Scalar v = c;
        for (int k = 0; k < m.e[0]; ++k) {
            v = v * x;
        }
        acc += v;
    }
    return acc;
}

Poly linear(const Scalar &root)
{
    return Poly::variable(1, 0) - Poly::constant(1, root);
}

// Roots of a univariate polynomial: rational ones by the rational root
// theorem, and when a factor without rational roots remains, the roots of
// that factor inside the extension field it defines.
std::vector<Scalar> roots_of(Poly p)
{
    std::vector<Scalar> out;
    if (p.total_degree() < 1) {
        return out;
    }
    const Poly dp = p.derivative(0);
    p = *divide_exact(p, gcd(p, dp));
    p = p.monic();
    if (p.total_degree() == 1) {
        out.push_back(-p.constant_term());
        return out;
    }
    if (!is_rational_poly(p)) {
        throw precondition_error("divisor constant needs a second algebraic extension");
    }
    while (p.constant_term().is_zero()) {
        out.push_back(Scalar(0));
        p = *divide_exact(p, Poly::variable(1, 0));
    }
    if (p.total_degree() >= 1) {
        // Integer coefficients.
        mpz_class lcm = 1;
        for (const auto &[m, c] : p.terms()) {
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rational().get_den().get_mpz_t());
        }
        const mpq_class a0 = p.constant_term().rational() * lcm;
        const mpq_class ad = p.leading_coeff().rational() * lcm;
        const auto nums = divisors(a0.get_num());
        const auto dens = divisors(ad.get_num());
        std::vector<mpq_class> tried;
        for (const auto &q : dens) {
            for (const auto &n : nums) {
                for (int sign : {1, -1}) {
                    mpq_class cand(n * sign, q);
                    cand.canonicalize();
                    if (std::find(tried.begin(), tried.end(), cand) != tried.end()) {
                        continue;
                    }
                    tried.push_back(cand);
                    if (p.total_degree() >= 1 && eval_univariate(p, Scalar(cand)).is_zero()) {
                        out.push_back(Scalar(cand));
                        p = *divide_exact(p, linear(Scalar(cand)));
                    }
                }
            }
        }
    }
    const int d = p.total_degree();
    if (d == 1) {
        out.push_back(-p.monic().constant_term());
    } else if (d >= 2) {
        const Poly m = p.monic();
        std::vector<mpq_class> coeffs(static_cast<std::size_t>(d) + 1, mpq_class(0));
        for (const auto &[mon, c] : m.terms()) {
            coeffs[mon.e[0]] = c.rational();
        }
        auto field = std::make_shared<const ExtField>("w", coeffs);
        const Scalar alpha = Scalar::generator(field);
        out.push_back(alpha);
        if (d == 2) {
            out.push_back(-Scalar(coeffs[1]) - alpha);
        }
    }
    return out;
}

// Constants c for which s and f - c g share a factor.
std::vector<Scalar> constants_for(const Poly &s, const Poly &F, const Poly &G)
{
    const int v = s.involves(kX2) ? kX2 : kX1;
    const int other = v == kX2 ? kX1 : kX2;
    const Poly s3 = s.widened(3);
    const Poly P = F.widened(3) - Poly::variable(3, kC) * G.widened(3);
    auto sc = s3.coeffs_in(v);
    auto pc = P.coeffs_in(v);
    std::reverse(sc.begin(), sc.end());
    std::reverse(pc.begin(), pc.end());
    const Poly R = sylvester_resultant(sc, pc, Poly(3), Poly::constant(3, Scalar(1)));
    if (R.is_zero()) {
        throw internal_error("elimination resultant vanishes identically");
    }
    Poly g(3);
    for (const auto &c : R.coeffs_in(other)) {
        g = gcd(g, c);
    }
    return roots_of(univariate(g, kC));
}

} // namespace

FactoredGerm FactoredGerm::make(Scalar unit, std::vector<std::pair<Poly, int>> factors)
{
    if (unit.is_zero()) {
        throw precondition_error("germ unit must be nonzero");
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto &[h, e] = factors[i];
        if (h.nvars() != 2) {
            throw precondition_error("meromorphic germs live in exactly two variables");
        }
        if (e < 1) {
            throw precondition_error("factor exponents must be positive");
        }
        if (h.total_degree() < 1) {
            throw precondition_error("factors must be nonconstant");
        }
        if (squarefree_decomposition(h).size() != 1) {
            throw precondition_error("factor " + std::to_string(i + 1) + " is not squarefree");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (gcd(h, factors[j].first).total_degree() > 0) {
                throw precondition_error("factors " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                                         " are not coprime");
            }
        }
    }
    return FactoredGerm{std::move(unit), std::move(factors)};
}

Poly FactoredGerm::expanded() const
{
    Poly p = Poly::constant(2, unit);
    for (const auto &[h, e] : factors) {
        p = p * h.pow(static_cast<unsigned>(e));
    }
    return p;
}

Poly FactoredGerm::radical() const
{
    Poly p = Poly::constant(2, Scalar(1));
    for (const auto &[h, e] : factors) {
        p = p * h;
    }
    return p;
}

bool FactoredGerm::is_real() const
{
    return unit.is_rational() &&
           std::all_of(factors.begin(), factors.end(), [](const auto &f) { return is_rational_poly(f.first); });
}

std::string OneForm::str(const std::vector<std::string> &names) const
{
    return "(" + a.str(names) + ")*d" + names[0] + " + (" + b.str(names) + ")*d" + names[1];
}

OneForm theta(const FactoredGerm &f, const FactoredGerm &g)
{
    const Poly F = f.expanded();
    const Poly G = g.expanded();
    if (gcd(F, G).total_degree() > 0) {
        throw precondition_error("f and g are not coprime");
    }
    const Poly R = f.radical() * g.radical();
    const Poly FG = F * G;
    const Poly a = R * (G * F.derivative(kX1) - F * G.derivative(kX1));
    const Poly b = R * (G * F.derivative(kX2) - F * G.derivative(kX2));
    const auto qa = divide_exact(a, FG);
    const auto qb = divide_exact(b, FG);
    if (!qa || !qb) {
        throw internal_error("theta division by f g is not exact");
    }
    return OneForm{*qa, *qb};
}

OneForm theta_logarithmic(const FactoredGerm &f, const FactoredGerm &g)
{
    auto [a, b] = log_form(f.factors, g.factors, Poly(2), Poly::constant(2, Scalar(1)));
    return OneForm{a, b};
}

std::optional<DivisorRecord> divisor_constant(const Poly &h, const FactoredGerm &f, const FactoredGerm &g)
{
    if (h.total_degree() < 1) {
        throw precondition_error("divisor candidate must be nonconstant");
    }
    const Poly F = f.expanded();
    const Poly G = g.expanded();
    if (gcd(h, F).total_degree() > 0 || gcd(h, G).total_degree() > 0) {
        throw precondition_error("divisor candidate shares a factor with f or g");
    }
    for (const Scalar &c : constants_for(h, F, G)) {
        auto [k, rho] = multiplicity(F - G * c, h);
        if (k >= 1) {
            return DivisorRecord{h, c, k - 1, rho};
        }
    }
    return std::nullopt;
}

MeroAnalysis analyze(const FactoredGerm &f, const FactoredGerm &g, const std::vector<std::string> &names,
                     const std::vector<Poly> &candidates)
{
    MeroAnalysis out;
    out.names = names;
    out.theta = theta(f, g);
    out.theta_gcd = out.theta.coefficient_gcd();
    if (out.theta_gcd.is_zero()) {
        throw precondition_error("f / g is constant; theta vanishes");
    }
    const Poly F = f.expanded();
    const Poly G = g.expanded();

    auto record = [&](const Poly &h, const Scalar &c, int mu) {
        auto [k, rho] = multiplicity(F - G * c, h);
        if (k - 1 != mu) {
            lemma_violation("power of " + h.str(names) + " in theta is " + std::to_string(mu) +
                            " but in f - c g it is " + std::to_string(k));
        }
        out.records.push_back(DivisorRecord{h, c, mu, rho});
    };

    Poly rest = out.theta_gcd;
    for (const auto &cand : candidates) {
        const Poly h = cand.monic();
        if (h.total_degree() < 1) {
            throw precondition_error("divisor candidate must be nonconstant");
        }
        auto [k, cof] = multiplicity(rest, h);
        if (k == 0) {
            if (auto r = divisor_constant(h, f, g)) {
                if (r->mu > 0) {
                    lemma_violation(h.str(names) + " has a constant but does not divide theta");
                }
                out.informational.push_back(*r);
            }
            continue;
        }
        const auto r = divisor_constant(h, f, g);
        if (!r) {
            lemma_violation("no constant c for the divisor " + h.str(names));
        }
        record(h, r->c, k);
        rest = cof;
    }

    const auto parts = squarefree_decomposition(rest);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        Poly s = parts[i];
        if (s.total_degree() < 1) {
            continue;
        }
        const int mu = static_cast<int>(i) + 1;
        for (const Scalar &c : constants_for(s, F, G)) {
            const Poly h = gcd(s, F - G * c).monic();
            if (h.total_degree() < 1) {
                continue;
            }
            record(h, c, mu);
            s = *divide_exact(s, h);
        }
        if (s.total_degree() > 0) {
            lemma_violation("no constant c for the divisor " + s.monic().str(names));
        }
    }

    const Poly H = divisor_product(out.records, 2);
    const auto oa = divide_exact(out.theta.a, H);
    const auto ob = divide_exact(out.theta.b, H);
    if (!oa || !ob) {
        throw internal_error("omega division is not exact");
    }
    out.omega = OneForm{*oa, *ob};
    out.omega_gcd = out.omega.coefficient_gcd();
    out.isolated = out.omega_gcd.is_constant() && !out.omega_gcd.is_zero();
    out.real = f.is_real() && g.is_real();
    for (const auto &r : out.records) {
        out.real = out.real && real_scalar(r.c) && real_poly(r.h) && real_poly(r.rho);
    }
    return out;
}

bool SystemS::all_satisfied() const
{
    return std::all_of(satisfied.begin(), satisfied.end(), [](bool b) { return b; });
}

std::vector<Jet> SystemS::equation_jets(int order) const
{
    const CtxPtr ctx = make_context(unknowns);
    std::vector<Jet> out;
    for (const auto &e : equations) {
        out.push_back(Jet::from_poly(ctx, e, order));
    }
    return out;
}

SystemS emit_system(const MeroAnalysis &analysis, const FactoredGerm &f, const FactoredGerm &g)
{
    SystemS s;
    const int p = static_cast<int>(f.factors.size());
    const int q = static_cast<int>(g.factors.size());
    const int e = analysis.e();
    const int m = p + q + 2 * e;
    if (m > kMaxVars - 2) {
        throw precondition_error("system (S) needs " + std::to_string(m) + " unknowns; at most " +
                                 std::to_string(kMaxVars - 2) + " are supported");
    }
    for (int i = 0; i < p; ++i) {
        s.unknowns.push_back("y1_" + std::to_string(i + 1));
        s.solution.push_back(f.factors[static_cast<std::size_t>(i)].first);
        s.ell.push_back(f.factors[static_cast<std::size_t>(i)].second);
    }
    for (int j = 0; j < q; ++j) {
        s.unknowns.push_back("y2_" + std::to_string(j + 1));
        s.solution.push_back(g.factors[static_cast<std::size_t>(j)].first);
        s.k.push_back(g.factors[static_cast<std::size_t>(j)].second);
    }
    for (int r = 0; r < e; ++r) {
        s.unknowns.push_back("y3_" + std::to_string(r + 1));
        s.solution.push_back(analysis.records[static_cast<std::size_t>(r)].h);
    }
    for (int r = 0; r < e; ++r) {
        s.unknowns.push_back("y4_" + std::to_string(r + 1));
        s.solution.push_back(analysis.records[static_cast<std::size_t>(r)].rho);
    }
    s.unit_f = f.unit;
    s.unit_g = g.unit;

    Poly fy = Poly::constant(m, f.unit);
    for (int i = 0; i < p; ++i) {
        fy = fy * Poly::variable(m, i).pow(static_cast<unsigned>(s.ell[static_cast<std::size_t>(i)]));
    }
    Poly gy = Poly::constant(m, g.unit);
    for (int j = 0; j < q; ++j) {
        gy = gy * Poly::variable(m, p + j).pow(static_cast<unsigned>(s.k[static_cast<std::size_t>(j)]));
    }
    std::vector<int> xmap{m, m + 1};
    for (int r = 0; r < e; ++r) {
        const auto &rec = analysis.records[static_cast<std::size_t>(r)];
        s.c.push_back(rec.c);
        s.mu.push_back(rec.mu);
        const Poly rhs = Poly::variable(m, p + q + r).pow(static_cast<unsigned>(rec.mu + 1)) *
                         Poly::variable(m, p + q + e + r);
        const Poly eq = fy - gy * rec.c - rhs;
        s.equations.push_back(eq);

        Poly val = eq.widened(m + 2);
        for (int v = 0; v < m; ++v) {
            if (val.involves(v)) {
                val = val.substitute(v, s.solution[static_cast<std::size_t>(v)].remapped(m + 2, xmap));
            }
        }
        s.satisfied.push_back(val.is_zero());
    }
    return s;
}

std::string to_string(Isolation i)
{
    switch (i) {
    case Isolation::yes:
        return "yes";
    case Isolation::no:
        return "no";
    default:
        return "unknown";
    }
}

namespace
{

// Local intersection multiplicity of {a = 0} and {b = 0} at the origin, as
// the x1-order of Res(W_a, b mod W_a).
std::pair<Isolation, std::optional<int>> local_intersection(const Jet &a, const Jet &b)
{
    if (a.is_zero() || b.is_zero()) {
        return {(a.is_zero() && a.exact()) || (b.is_zero() && b.exact()) ? Isolation::no : Isolation::unknown,
                std::nullopt};
    }
    if (a.is_unit() || b.is_unit()) {
        return {Isolation::yes, 0};
    }
    const LinearChange lc = find_regular_change(a, kX2, {kX1, kX2}, 0);
    const Jet a1 = lc.apply(a);
    const Jet b1 = lc.apply(b);
    const PreparedForm prep = weierstrass_prepare(a1, kX2);
    const DivisionResult div = weierstrass_divide(b1, a1, kX2);
    const int ord = std::min(prep.order, div.remainder.order());
    const Jet one = Jet::constant(a.ctx(), Scalar(1), ord);
    std::vector<Jet> w{one};
    w.insert(w.end(), prep.poly.coeffs().begin(), prep.poly.coeffs().end());
    std::vector<Jet> r(div.remainder_coeffs.rbegin(), div.remainder_coeffs.rend());
    const Jet res = sylvester_resultant(w, r, Jet(a.ctx(), ord), one);
    const JetOrder v = res.valuation();
    if (!v.infinite()) {
        return {Isolation::yes, *v.value};
    }
    return {res.exact() ? Isolation::no : Isolation::unknown, std::nullopt};
}

struct JetPair {
    Jet a;
    Jet b;
};

} // namespace

MeroDeformation build_mero_deformation(const SystemS &sys, const SolutionFamily &family,
                                       const std::vector<Scalar> &tgrid, int k0, const FactoredGerm &f,
                                       const FactoredGerm &g, int order)
{
    if (k0 < 1) {
        throw precondition_error("k0 must be positive");
    }
    if (family.y_vars.size() != sys.unknowns.size()) {
        throw precondition_error("family must assign every unknown of the system");
    }
    std::map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < family.y_vars.size(); ++i) {
        slot[family.y_vars[i]] = i;
    }
    for (const auto &u : sys.unknowns) {
        if (!slot.count(u)) {
            throw precondition_error("family lacks the unknown " + u);
        }
    }
    SolutionFamily checked = family;
    checked.system = sys.equation_jets(order);
    MeroDeformation out;
    out.family_ok = verify_family(checked, order).passed();

    const CtxPtr xctx = !family.witness.empty() ? family.witness.front().ctx()
                        : !family.target.empty() ? family.target.front().ctx()
                                                 : make_context({"x1", "x2"});
    if (xctx->size() != 2) {
        throw precondition_error("meromorphic slices need two coordinates");
    }
    const int p = static_cast<int>(sys.ell.size());
    const int q = static_cast<int>(sys.k.size());
    const int e = static_cast<int>(sys.mu.size());

    for (const Scalar &t : tgrid) {
        SliceReport rep;
        rep.t = t;
        std::map<std::string, Jet> zsub;
        for (std::size_t j = 0; j < family.witness.size(); ++j) {
            const Jet &z = family.witness[j];
            const Jet head = Jet::from_poly(xctx, z.poly().truncated(k0), z.order(), true);
            Jet zt = head;
            if (!(t - Scalar(1)).is_zero()) {
                zt = head + (z - head) * (Scalar(1) - t);
            }
            zsub.emplace(family.z_vars[j], zt);
        }
        std::vector<Jet> y;
        rep.exact = true;
        for (const auto &u : sys.unknowns) {
            Jet v = compose(family.family[slot[u]], zsub, xctx);
            v = v.with_order(std::min(order, v.order()));
            rep.exact = rep.exact && v.exact();
            y.push_back(std::move(v));
        }
        std::vector<std::pair<Jet, int>> fs, gs;
        std::vector<std::pair<Poly, int>> fp, gp;
        for (int i = 0; i < p; ++i) {
            fs.emplace_back(y[static_cast<std::size_t>(i)], sys.ell[static_cast<std::size_t>(i)]);
            fp.emplace_back(y[static_cast<std::size_t>(i)].poly(), sys.ell[static_cast<std::size_t>(i)]);
        }
        for (int j = 0; j < q; ++j) {
            gs.emplace_back(y[static_cast<std::size_t>(p + j)], sys.k[static_cast<std::size_t>(j)]);
            gp.emplace_back(y[static_cast<std::size_t>(p + j)].poly(), sys.k[static_cast<std::size_t>(j)]);
        }
        if (t.is_zero()) {
            Jet F = Jet::constant(xctx, sys.unit_f, order);
            for (const auto &[h, l] : fs) {
                F = F * h.pow(static_cast<unsigned>(l));
            }
            Jet G = Jet::constant(xctx, sys.unit_g, order);
            for (const auto &[h, k] : gs) {
                G = G * h.pow(static_cast<unsigned>(k));
            }
            const Jet f0 = Jet::from_poly(xctx, f.expanded(), order);
            const Jet g0 = Jet::from_poly(xctx, g.expanded(), order);
            rep.matches_input = (F - f0).is_zero() && (G - g0).is_zero();
        }

        if (rep.exact) {
            auto [a, b] = log_form(fp, gp, Poly(2), Poly::constant(2, Scalar(1)));
            Poly H = Poly::constant(2, Scalar(1));
            for (int r = 0; r < e; ++r) {
                H = H * y[static_cast<std::size_t>(p + q + r)].poly().pow(
                            static_cast<unsigned>(sys.mu[static_cast<std::size_t>(r)]));
            }
            rep.theta = OneForm{a, b};
            rep.order = order;
            const auto oa = divide_exact(a, H);
            const auto ob = divide_exact(b, H);
            rep.division_ok = oa && ob;
            if (rep.division_ok) {
                rep.omega = OneForm{*oa, *ob};
                const Poly gg = rep.omega.coefficient_gcd();
                rep.isolated = !gg.is_zero() && !gg.constant_term().is_zero() ? Isolation::yes : Isolation::no;
                try {
                    const auto li = local_intersection(Jet::from_poly(xctx, *oa, order),
                                                       Jet::from_poly(xctx, *ob, order));
                    if (li.first == Isolation::yes) {
                        rep.intersection_multiplicity = li.second;
                    }
                } catch (const Error &) {
                }
            }
            out.slices.push_back(std::move(rep));
            continue;
        }

        auto [a, b] = log_form(fs, gs, Jet(xctx, order), Jet::constant(xctx, Scalar(1), order));
        Jet H = Jet::constant(xctx, Scalar(1), order);
        for (int r = 0; r < e; ++r) {
            H = H * y[static_cast<std::size_t>(p + q + r)].pow(static_cast<unsigned>(sys.mu[static_cast<std::size_t>(r)]));
        }
        rep.theta = OneForm{a.poly(), b.poly()};
        rep.order = std::min({a.order(), b.order(), H.order()});
        try {
            JetPair om{Jet(xctx, order), Jet(xctx, order)};
            if (H.is_unit()) {
                const Jet inv = H.invert_unit();
                om = JetPair{a * inv, b * inv};
                rep.division_ok = true;
            } else {
                const LinearChange lc = find_regular_change(H, kX2, {kX1, kX2}, 0);
                const Jet Hc = lc.apply(H);
                const DivisionResult da = weierstrass_divide(lc.apply(a), Hc, kX2);
                const DivisionResult db = weierstrass_divide(lc.apply(b), Hc, kX2);
                rep.division_ok = da.remainder.is_zero() && db.remainder.is_zero();
                const LinearChange back = lc.inverted();
                om = JetPair{back.apply(da.quotient), back.apply(db.quotient)};
                rep.order = std::min({rep.order, da.remainder.order(), db.remainder.order()});
            }
            rep.omega = OneForm{om.a.poly(), om.b.poly()};
            if (rep.division_ok) {
                const auto li = local_intersection(om.a, om.b);
                rep.isolated = li.first;
                rep.intersection_multiplicity = li.second;
            }
        } catch (const Error &) {
            rep.isolated = Isolation::unknown;
        }
        out.slices.push_back(std::move(rep));
    }
    return out;
}

} // namespace zeq
