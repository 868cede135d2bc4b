#ifndef ZEQ_PSEUDOPOLY_HPP
#define ZEQ_PSEUDOPOLY_HPP

#include <vector>

#include <zeq/jet.hpp>

namespace zeq
{

inline constexpr int kMaxPseudoDegree = 12;

enum class Exec { serial, parallel };

// Monic polynomial v^p + a_1 v^(p-1) + ... + a_p in a distinguished variable v,
// coefficients being jets that do not involve v.
class PseudoPolynomial
{
public:
    // nominal_order is the order reported when p = 0.
    PseudoPolynomial(CtxPtr ctx, int var, std::vector<Jet> coeffs, int nominal_order = kDefaultOrder);

    // Reads a jet that is literally monic in `var` (leading coefficient the
    // constant 1, no other term of that degree or higher in var).
    static PseudoPolynomial from_jet(const Jet &f, int var);

    const CtxPtr &ctx() const
    {
        return ctx_;
    }
    int var() const
    {
        return var_;
    }
    int degree() const
    {
        return static_cast<int>(coeffs_.size());
    }
    // a_1..a_p (index j-1 holds a_j).
    const std::vector<Jet> &coeffs() const
    {
        return coeffs_;
    }
    // Every a_j vanishes at the origin.
    bool distinguished() const;
    bool exact() const;
    // Smallest coefficient order (the nominal order when p = 0).
    int order() const;

    // v^p + sum a_j v^(p-j) as a jet; the order is capped by what the
    // coefficient orders certify.
    Jet to_jet(int order) const;

    std::string str() const;

private:
    CtxPtr ctx_;
    int var_;
    std::vector<Jet> coeffs_;
    int nominal_order_;
};

struct GenDiscSequence {
    int degree = 0;
    // entries[l-1] holds Delta_l = d_{p-l+1}.
    std::vector<Jet> entries;
    // 1-based index of the first entry with a stored term.
    int first_nonzero = 0;
    // Entries before first_nonzero are identically zero (not just mod order).
    bool lower_exact = true;
    // Smallest order among the entries.
    int order = 0;

    const Jet &first() const
    {
        return entries[static_cast<std::size_t>(first_nonzero - 1)];
    }
};

// Newton power sums s_0..s_{count-1} of the roots.
std::vector<Jet> power_sums(const PseudoPolynomial &p, int count);

// det (s_{i+j})_{0<=i,j<k}: the sum over k-subsets of roots of the squared
// Vandermonde product.
Jet hankel_minor(const PseudoPolynomial &p, int k);

// d_1..d_p with the minors evaluated serially or concurrently.
std::vector<Jet> hankel_minors(const PseudoPolynomial &p, Exec exec = Exec::parallel);

GenDiscSequence generalized_discriminants(const PseudoPolynomial &p, Exec exec = Exec::parallel);

Jet resultant(const PseudoPolynomial &p, const PseudoPolynomial &q);

} // namespace zeq

#endif
