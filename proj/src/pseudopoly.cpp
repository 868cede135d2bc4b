#include <zeq/determinant.hpp>
#include <zeq/error.hpp>
#include <zeq/kernels.hpp>
#include <zeq/pseudopoly.hpp>

#include <algorithm>

namespace zeq
{

PseudoPolynomial::PseudoPolynomial(CtxPtr ctx, int var, std::vector<Jet> coeffs, int nominal_order)
    : ctx_(std::move(ctx)), var_(var), coeffs_(std::move(coeffs)), nominal_order_(nominal_order)
{
    if (var_ < 0 || var_ >= ctx_->size()) {
        throw precondition_error("distinguished variable outside the context");
    }
    for (const auto &a : coeffs_) {
        if (a.ctx() != ctx_ && !a.ctx()->same_as(*ctx_)) {
            throw precondition_error("pseudopolynomial coefficient in a different context");
        }
        if (a.involves(var_)) {
            throw precondition_error("pseudopolynomial coefficient involves the distinguished variable '" +
                                     ctx_->names[var_] + "'");
        }
    }
}

PseudoPolynomial PseudoPolynomial::from_jet(const Jet &f, int var)
{
    const auto cs = f.poly().coeffs_in(var);
    const int p = static_cast<int>(cs.size()) - 1;
    if (f.is_zero() || cs.back() != Poly::constant(f.ctx()->size(), Scalar(1))) {
        throw precondition_error("not monic in '" + f.ctx()->names[var] + "': " + f.str());
    }
    std::vector<Jet> a;
    for (int j = 1; j <= p; ++j) {
        const int ord = f.exact() ? f.order() : f.order() - (p - j);
        a.push_back(Jet::from_poly(f.ctx(), cs[static_cast<std::size_t>(p - j)], std::max(ord, 0), f.exact()));
    }
    return PseudoPolynomial(f.ctx(), var, std::move(a), f.order());
}

bool PseudoPolynomial::distinguished() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Jet &a) { return a.constant_term().is_zero(); });
}

bool PseudoPolynomial::exact() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Jet &a) { return a.exact(); });
}

int PseudoPolynomial::order() const
{
    int n = coeffs_.empty() ? nominal_order_ : coeffs_.front().order();
    for (const auto &a : coeffs_) {
        n = std::min(n, a.order());
    }
    return n;
}

Jet PseudoPolynomial::to_jet(int order) const
{
    const int p = degree();
    int bound = order;
    for (int j = 1; j <= p; ++j) {
        const Jet &a = coeffs_[static_cast<std::size_t>(j - 1)];
        if (!a.exact()) {
            bound = std::min(bound, a.order() + p - j);
        }
    }
    const int n = ctx_->size();
    Monomial lead;
    lead.e[var_] = static_cast<std::uint16_t>(p);
    Poly out = Poly::monomial(n, lead, Scalar(1));
    for (int j = 1; j <= p; ++j) {
        Monomial vm;
        vm.e[var_] = static_cast<std::uint16_t>(p - j);
        out += coeffs_[static_cast<std::size_t>(j - 1)].poly().mul(Poly::monomial(n, vm, Scalar(1)));
    }
    return Jet::from_poly(ctx_, out, bound, exact());
}

std::string PseudoPolynomial::str() const
{
    return to_jet(order() + degree()).str();
}

namespace
{

// Newton's identities for x^p + a_1 x^(p-1) + ... + a_p; no division needed.
template <typename R>
std::vector<R> newton_sums(const std::vector<R> &a, int count, const R &zero, const R &one)
{
    const int p = static_cast<int>(a.size());
    std::vector<R> s;
    s.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        if (k == 0) {
            s.push_back(one * Scalar(static_cast<long>(p)));
            continue;
        }
        R acc = zero;
        for (int j = 1; j <= std::min(k - 1, p); ++j) {
            acc = acc + a[static_cast<std::size_t>(j - 1)] * s[static_cast<std::size_t>(k - j)];
        }
        if (k <= p) {
            acc = acc + a[static_cast<std::size_t>(k - 1)] * Scalar(static_cast<long>(k));
        }
        s.push_back(zero - acc);
    }
    return s;
}

template <typename R>
R hankel_det(const std::vector<R> &s, int k, const R &zero, const R &one)
{
    Matrix<R> h(static_cast<std::size_t>(k), std::vector<R>(static_cast<std::size_t>(k), zero));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            h[i][j] = s[static_cast<std::size_t>(i + j)];
        }
    }
    return berkowitz_det(h, zero, one);
}

void check_degree(const PseudoPolynomial &p)
{
    if (p.degree() > kMaxPseudoDegree) {
        throw precondition_error("pseudopolynomial degree " + std::to_string(p.degree()) + " exceeds the cap of " +
                                 std::to_string(kMaxPseudoDegree));
    }
}

std::vector<Poly> coeff_polys(const PseudoPolynomial &p)
{
    std::vector<Poly> a;
    for (const auto &c : p.coeffs()) {
        a.push_back(c.poly());
    }
    return a;
}

// Power sums s_0..s_{count-1}, computed as exact polynomials when every
// coefficient is exact and as truncated jets otherwise.
struct SumsBundle {
    bool exact;
    std::vector<Poly> polys;
    std::vector<Jet> jets;
};

SumsBundle sums_bundle(const PseudoPolynomial &p, int count)
{
    const int n = p.ctx()->size();
    SumsBundle b{p.exact(), {}, {}};
    if (b.exact) {
        b.polys = newton_sums(coeff_polys(p), count, Poly(n), Poly::constant(n, Scalar(1)));
    } else {
        const int ord = p.order();
        b.jets = newton_sums(p.coeffs(), count, Jet(p.ctx(), ord), Jet::constant(p.ctx(), Scalar(1), ord));
    }
    return b;
}

Jet minor_from_bundle(const PseudoPolynomial &p, const SumsBundle &b, int k)
{
    const int n = p.ctx()->size();
    if (b.exact) {
        Poly d = hankel_det(b.polys, k, Poly(n), Poly::constant(n, Scalar(1)));
        return Jet::from_poly(p.ctx(), d, p.order(), true);
    }
    const int ord = p.order();
    return hankel_det(b.jets, k, Jet(p.ctx(), ord), Jet::constant(p.ctx(), Scalar(1), ord));
}

} // namespace

std::vector<Jet> power_sums(const PseudoPolynomial &p, int count)
{
    if (count < 1) {
        throw precondition_error("power_sums needs count >= 1");
    }
    SumsBundle b = sums_bundle(p, count);
    if (!b.exact) {
        return b.jets;
    }
    std::vector<Jet> out;
    for (const auto &s : b.polys) {
        out.push_back(Jet::from_poly(p.ctx(), s, p.order(), true));
    }
    return out;
}

Jet hankel_minor(const PseudoPolynomial &p, int k)
{
    check_degree(p);
    if (k < 1 || k > p.degree()) {
        throw precondition_error("Hankel minor index " + std::to_string(k) + " outside 1.." +
                                 std::to_string(p.degree()));
    }
    return minor_from_bundle(p, sums_bundle(p, 2 * k - 1), k);
}

std::vector<Jet> hankel_minors(const PseudoPolynomial &p, Exec exec)
{
    check_degree(p);
    const int deg = p.degree();
    if (deg == 0) {
        return {};
    }
    const SumsBundle b = sums_bundle(p, 2 * deg - 1);
    std::vector<Jet> out(static_cast<std::size_t>(deg), Jet(p.ctx(), p.order()));
    auto body = [&](int i) { out[static_cast<std::size_t>(i)] = minor_from_bundle(p, b, i + 1); };
    if (exec == Exec::parallel) {
        kernels::for_each_index_parallel(deg, body);
    } else {
        kernels::for_each_index_serial(deg, body);
    }
    return out;
}

GenDiscSequence generalized_discriminants(const PseudoPolynomial &p, Exec exec)
{
    const int deg = p.degree();
    const std::vector<Jet> d = hankel_minors(p, exec);
    GenDiscSequence g;
    g.degree = deg;
    g.order = p.order();
    for (int l = 1; l <= deg; ++l) {
        g.entries.push_back(d[static_cast<std::size_t>(deg - l)]);
        g.order = std::min(g.order, g.entries.back().order());
    }
    for (int l = 1; l <= deg; ++l) {
        const Jet &e = g.entries[static_cast<std::size_t>(l - 1)];
        if (!e.is_zero()) {
            g.first_nonzero = l;
            return g;
        }
        g.lower_exact = g.lower_exact && e.exact();
    }
    if (deg == 0) {
        return g;
    }
    if (!g.lower_exact) {
        throw inconclusive_error("every generalized discriminant vanishes to order " + std::to_string(g.order) +
                                 " on truncated data");
    }
    throw internal_error("every generalized discriminant is identically zero");
}

Jet resultant(const PseudoPolynomial &p, const PseudoPolynomial &q)
{
    if (p.var() != q.var() || !p.ctx()->same_as(*q.ctx())) {
        throw precondition_error("resultant needs a common distinguished variable and context");
    }
    check_degree(p);
    check_degree(q);
    const int n = p.ctx()->size();
    const int ord = std::min(p.order(), q.order());
    if (p.exact() && q.exact()) {
        std::vector<Poly> pc{Poly::constant(n, Scalar(1))}, qc{Poly::constant(n, Scalar(1))};
        for (const auto &a : p.coeffs()) {
            pc.push_back(a.poly());
        }
        for (const auto &a : q.coeffs()) {
            qc.push_back(a.poly());
        }
        return Jet::from_poly(p.ctx(), sylvester_resultant(pc, qc, Poly(n), Poly::constant(n, Scalar(1))), ord, true);
    }
    const Jet one = Jet::constant(p.ctx(), Scalar(1), ord);
    std::vector<Jet> pc{one}, qc{one};
    pc.insert(pc.end(), p.coeffs().begin(), p.coeffs().end());
    qc.insert(qc.end(), q.coeffs().begin(), q.coeffs().end());
    return sylvester_resultant(pc, qc, Jet(p.ctx(), ord), one);
}

} // namespace zeq
