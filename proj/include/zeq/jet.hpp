#ifndef ZEQ_JET_HPP
#define ZEQ_JET_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <zeq/poly.hpp>
#include <zeq/scalar.hpp>

namespace zeq
{

inline constexpr int kDefaultOrder = 16;

// Ordered variable names. The first `nparams` names form the parameter
// block t; the rest are the coordinates x, in projection-ladder order.
struct VarContext {
    std::vector<std::string> names;
    int nparams = 0;

    int size() const
    {
        return static_cast<int>(names.size());
    }
    // -1 when absent.
    int index_of(const std::string &name) const;
    bool is_param(int i) const
    {
        return i < nparams;
    }
    int ncoords() const
    {
        return size() - nparams;
    }
    // Index of the k-th coordinate (0-based).
    int coord(int k) const
    {
        return nparams + k;
    }
    bool same_as(const VarContext &o) const
    {
        return names == o.names && nparams == o.nparams;
    }
};

using CtxPtr = std::shared_ptr<const VarContext>;

CtxPtr make_context(std::vector<std::string> names, int nparams = 0);

// Valuation of a jet: nullopt means no term below the truncation order.
// `certain` is false when that absence only holds modulo the order.
struct JetOrder {
    std::optional<int> value;
    bool certain = true;

    bool infinite() const
    {
        return !value.has_value();
    }
};

// Multivariate power series known modulo total degree `order`.
// `exact` marks a genuine polynomial with no hidden tail.
class Jet
{
public:
    Jet(CtxPtr ctx, int order);

    static Jet from_poly(CtxPtr ctx, const Poly &p, int order, bool exact = true);
    static Jet constant(CtxPtr ctx, const Scalar &c, int order);
    static Jet variable(CtxPtr ctx, int var, int order);
    static Jet variable(CtxPtr ctx, const std::string &name, int order);

    const CtxPtr &ctx() const
    {
        return ctx_;
    }
    int order() const
    {
        return order_;
    }
    bool exact() const
    {
        return exact_;
    }
    const Poly &poly() const
    {
        return poly_;
    }

    // No stored term: zero modulo the order (identically zero if exact).
    bool is_zero() const
    {
        return poly_.is_zero();
    }
    Scalar constant_term() const
    {
        return poly_.constant_term();
    }
    bool is_unit() const
    {
        return !constant_term().is_zero();
    }

    Jet &operator+=(const Jet &o);
    Jet &operator-=(const Jet &o);
    Jet &operator*=(const Scalar &c);
    friend Jet operator+(Jet a, const Jet &b)
    {
        return a += b;
    }
    friend Jet operator-(Jet a, const Jet &b)
    {
        return a -= b;
    }
    friend Jet operator*(Jet a, const Scalar &c)
    {
        return a *= c;
    }
    friend Jet operator*(const Jet &a, const Jet &b)
    {
        return a.mul(b);
    }
    Jet operator-() const;

    Jet mul(const Jet &o) const;
    Jet pow(unsigned k) const;
    // Coarser view of the same series.
    Jet with_order(int order) const;
    Jet invert_unit() const;
    JetOrder valuation() const;
    Jet derivative(int var) const;
    // Every variable in `vars` set to zero.
    Jet restricted_to_zero(const std::vector<int> &vars) const;
    // Same series in a wider context whose leading names coincide with ours,
    // or in any context that contains all names used.
    Jet in_context(const CtxPtr &target) const;
    bool involves(int var) const
    {
        return poly_.involves(var);
    }

    std::string str() const;

private:
    CtxPtr ctx_;
    int order_;
    bool exact_ = true;
    Poly poly_;
};

void require_same_context(const Jet &a, const Jet &b);

// Substitutes series for variables of a. Variables of a not in `subst` are
// carried over by name into `target`. Substituted values must have zero
// constant term unless allow_constant is set and a is exact.
Jet compose(const Jet &a, const std::map<std::string, Jet> &subst, const CtxPtr &target,
            bool allow_constant = false);

} // namespace zeq

#endif
