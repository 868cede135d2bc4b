#include <zeq/error.hpp>
#include <zeq/jet.hpp>
#include <zeq/kernels.hpp>

#include <algorithm>
#include <limits>

namespace zeq
{

int VarContext::index_of(const std::string &name) const
{
    for (int i = 0; i < size(); ++i) {
        if (names[i] == name) {
            return i;
        }
    }
    return -1;
}

CtxPtr make_context(std::vector<std::string> names, int nparams)
{
    if (static_cast<int>(names.size()) > kMaxVars) {
        throw precondition_error("too many variables (limit " + std::to_string(kMaxVars) + ")");
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty()) {
            throw precondition_error("empty variable name");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (names[i] == names[j]) {
                throw precondition_error("duplicate variable name '" + names[i] + "'");
            }
        }
    }
    if (nparams < 0 || nparams > static_cast<int>(names.size())) {
        throw precondition_error("parameter block larger than the variable list");
    }
    auto ctx = std::make_shared<VarContext>();
    ctx->names = std::move(names);
    ctx->nparams = nparams;
    return ctx;
}

void require_same_context(const Jet &a, const Jet &b)
{
    if (a.ctx() != b.ctx() && !a.ctx()->same_as(*b.ctx())) {
        throw precondition_error("context mismatch between jets");
    }
}

Jet::Jet(CtxPtr ctx, int order) : ctx_(std::move(ctx)), order_(order), poly_(ctx_->size())
{
    if (order < 0) {
        throw precondition_error("negative truncation order");
    }
}

Jet Jet::from_poly(CtxPtr ctx, const Poly &p, int order, bool exact)
{
    Jet j(std::move(ctx), order);
    j.poly_ = p.widened(j.ctx_->size()).truncated(order);
    j.exact_ = exact && j.poly_.size() == p.size();
    return j;
}

Jet Jet::constant(CtxPtr ctx, const Scalar &c, int order)
{
    const int n = ctx->size();
    return from_poly(std::move(ctx), Poly::constant(n, c), order);
}

Jet Jet::variable(CtxPtr ctx, int var, int order)
{
    const int n = ctx->size();
    return from_poly(std::move(ctx), Poly::variable(n, var), order);
}

Jet Jet::variable(CtxPtr ctx, const std::string &name, int order)
{
    const int i = ctx->index_of(name);
    if (i < 0) {
        throw precondition_error("unknown variable '" + name + "'");
    }
    return variable(std::move(ctx), i, order);
}

Jet &Jet::operator+=(const Jet &o)
{
    require_same_context(*this, o);
    const int n = std::min(order_, o.order_);
    Poly sum = poly_ + o.poly_;
    const std::size_t before = sum.size();
    poly_ = sum.truncated(n);
    exact_ = exact_ && o.exact_ && poly_.size() == before;
    order_ = n;
    return *this;
}

Jet &Jet::operator-=(const Jet &o)
{
    return *this += -o;
}

Jet &Jet::operator*=(const Scalar &c)
{
    poly_ *= c;
    return *this;
}

Jet Jet::operator-() const
{
    Jet r = *this;
    r.poly_ = -r.poly_;
    return r;
}

Jet Jet::mul(const Jet &o) const
{
    require_same_context(*this, o);
    Jet r(ctx_, std::min(order_, o.order_));
    if (exact_ && o.exact_) {
        const int top = poly_.total_degree() + o.poly_.total_degree();
        if (top >= r.order_) {
            // Only cancellation in the high part could keep the product exact.
            Poly full = kernels::mul_truncated(poly_, o.poly_, -1);
            r.poly_ = full.truncated(r.order_);
            r.exact_ = r.poly_.size() == full.size();
            return r;
        }
        r.poly_ = kernels::mul_truncated(poly_, o.poly_, r.order_);
        return r;
    }
    r.poly_ = kernels::mul_truncated(poly_, o.poly_, r.order_);
    r.exact_ = false;
    return r;
}

Jet Jet::pow(unsigned k) const
{
    Jet result = constant(ctx_, Scalar(1), order_);
    for (unsigned i = 0; i < k; ++i) {
        result = result.mul(*this);
    }
    return result;
}

Jet Jet::with_order(int order) const
{
    if (order >= order_) {
        return *this;
    }
    return from_poly(ctx_, poly_, order, exact_);
}

Jet Jet::invert_unit() const
{
    const Scalar a0 = constant_term();
    if (a0.is_zero()) {
        throw precondition_error("not a unit: constant term vanishes in " + str());
    }
    const Scalar b0 = a0.inverse();
    const int n = ctx_->size();
    std::vector<Poly> a(static_cast<std::size_t>(std::max(order_, 1)), Poly(n));
    for (const auto &[m, c] : poly_.terms()) {
        a[m.degree()].add_term(m, c);
    }
    std::vector<Poly> b(a.size(), Poly(n));
    b[0] = Poly::constant(n, b0);
    for (int d = 1; d < order_; ++d) {
        Poly acc(n);
        for (int j = 1; j <= d; ++j) {
            if (!a[j].is_zero() && !b[d - j].is_zero()) {
                acc += a[j].mul(b[d - j]);
            }
        }
        b[d] = acc * (-b0);
    }
    Jet r(ctx_, order_);
    for (int d = 0; d < order_; ++d) {
        r.poly_ += b[d];
    }
    r.exact_ = exact_ && poly_.is_constant();
    return r;
}

JetOrder Jet::valuation() const
{
    if (poly_.is_zero()) {
        return JetOrder{std::nullopt, exact_};
    }
    return JetOrder{poly_.min_degree(), true};
}

Jet Jet::derivative(int var) const
{
    if (var < 0 || var >= ctx_->size()) {
        throw precondition_error("derivative with respect to a variable outside the context");
    }
    Jet r(ctx_, std::max(order_ - 1, 0));
    r.poly_ = poly_.derivative(var).truncated(r.order_);
    r.exact_ = exact_;
    return r;
}

Jet Jet::restricted_to_zero(const std::vector<int> &vars) const
{
    Jet r(ctx_, order_);
    for (const auto &[m, c] : poly_.terms()) {
        bool keep = true;
        for (int v : vars) {
            keep = keep && m.e[v] == 0;
        }
        if (keep) {
            r.poly_.add_term(m, c);
        }
    }
    r.exact_ = exact_;
    return r;
}

Jet Jet::in_context(const CtxPtr &target) const
{
    if (target == ctx_ || target->same_as(*ctx_)) {
        Jet r = *this;
        r.ctx_ = target;
        return r;
    }
    std::vector<int> map(ctx_->size(), -1);
    for (int i = 0; i < ctx_->size(); ++i) {
        map[i] = target->index_of(ctx_->names[i]);
        if (map[i] < 0 && poly_.involves(i)) {
            throw precondition_error("variable '" + ctx_->names[i] + "' missing from target context");
        }
    }
    Jet r(target, order_);
    r.poly_ = poly_.remapped(target->size(), map);
    r.exact_ = exact_;
    return r;
}

std::string Jet::str() const
{
    std::string s = poly_.str(ctx_->names);
    if (!exact_) {
        s += " + O(" + std::to_string(order_) + ")";
    }
    return s;
}

Jet compose(const Jet &a, const std::map<std::string, Jet> &subst, const CtxPtr &target, bool allow_constant)
{
    constexpr long kInf = std::numeric_limits<int>::max();
    const VarContext &src = *a.ctx();
    const int nsrc = src.size();
    const int ntgt = target->size();

    for (const auto &[name, value] : subst) {
        if (src.index_of(name) < 0) {
            throw precondition_error("substitution for unknown variable '" + name + "'");
        }
        if (value.ctx() != target && !value.ctx()->same_as(*target)) {
            throw precondition_error("substituted value for '" + name + "' lives in another context");
        }
    }

    std::vector<Poly> value(nsrc, Poly(ntgt));
    std::vector<long> val_order(nsrc, 1);  // lower bound on valuation
    std::vector<long> val_trunc(nsrc, kInf); // truncation order, kInf if exact
    bool all_exact = a.exact();
    long cap = a.order();
    for (int i = 0; i < nsrc; ++i) {
        auto it = subst.find(src.names[i]);
        if (it == subst.end()) {
            const int j = target->index_of(src.names[i]);
            if (j < 0) {
                if (a.poly().involves(i)) {
                    throw precondition_error("variable '" + src.names[i] + "' has no image in the target context");
                }
                continue;
            }
            value[i] = Poly::variable(ntgt, j);
            continue;
        }
        const Jet &s = it->second;
        if (!s.constant_term().is_zero()) {
            if (!allow_constant) {
                throw precondition_error("substitution diverges: value for '" + src.names[i] +
                                         "' has a nonzero constant term");
            }
            if (!a.exact()) {
                throw precondition_error("constant-term substitution into a truncated series");
            }
        }
        value[i] = s.poly();
        const JetOrder v = s.valuation();
        val_order[i] = v.value ? *v.value : s.order();
        if (!s.exact()) {
            val_trunc[i] = s.order();
            if (a.poly().involves(i)) {
                all_exact = false;
            }
        }
        if (a.exact()) {
            cap = std::max<long>(cap, s.order());
        }
    }

    long bound = kInf;
    if (!a.exact()) {
        long min_ord = kInf;
        for (int i = 0; i < nsrc; ++i) {
            min_ord = std::min(min_ord, val_order[i]);
        }
        bound = min_ord == kInf ? a.order() : static_cast<long>(a.order()) * min_ord;
    }
    for (const auto &[m, c] : a.poly().terms()) {
        long base = 0;
        for (int i = 0; i < nsrc; ++i) {
            base += static_cast<long>(m.e[i]) * val_order[i];
        }
        for (int i = 0; i < nsrc; ++i) {
            if (m.e[i] == 0 || val_trunc[i] == kInf) {
                continue;
            }
            bound = std::min(bound, base - val_order[i] + val_trunc[i]);
        }
    }
    const int result_order = static_cast<int>(std::min(bound, cap));

    // Powers of each substituted value, truncated (or full when exact).
    const int limit = all_exact ? -1 : result_order;
    std::vector<std::vector<Poly>> powers(nsrc);
    for (int i = 0; i < nsrc; ++i) {
        const int maxe = a.poly().degree_in(i);
        powers[i].push_back(Poly::constant(ntgt, Scalar(1)));
        for (int k = 1; k <= maxe; ++k) {
            powers[i].push_back(kernels::mul_truncated(powers[i].back(), value[i], limit));
        }
    }
    Poly out(ntgt);
    for (const auto &[m, c] : a.poly().terms()) {
        Poly term = Poly::constant(ntgt, c);
        for (int i = 0; i < nsrc && !term.is_zero(); ++i) {
            if (m.e[i] != 0) {
                term = kernels::mul_truncated(term, powers[i][m.e[i]], limit);
            }
        }
        out += term;
    }
    return Jet::from_poly(target, out, result_order, all_exact);
}

} // namespace zeq
