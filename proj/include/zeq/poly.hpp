#ifndef ZEQ_POLY_HPP
#define ZEQ_POLY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <zeq/scalar.hpp>

namespace zeq
{

inline constexpr int kMaxVars = 16;

// Exponent vector; unused slots stay zero.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};

    int degree() const
    {
        int d = 0;
        for (auto x : e) {
            d += x;
        }
        return d;
    }
    bool is_one() const
    {
        return degree() == 0;
    }
    Monomial operator*(const Monomial &o) const
    {
        Monomial r;
        for (int i = 0; i < kMaxVars; ++i) {
            r.e[i] = static_cast<std::uint16_t>(e[i] + o.e[i]);
        }
        return r;
    }
    friend bool operator==(const Monomial &, const Monomial &) = default;
};

// Graded lexicographic order, x1 > x2 > ... within a degree.
struct GrlexLess {
    bool operator()(const Monomial &a, const Monomial &b) const
    {
        const int da = a.degree(), db = b.degree();
        if (da != db) {
            return da < db;
        }
        for (int i = 0; i < kMaxVars; ++i) {
            if (a.e[i] != b.e[i]) {
                return a.e[i] < b.e[i];
            }
        }
        return false;
    }
};

// Sparse multivariate polynomial over Scalar. No zero coefficients stored.
class Poly
{
public:
    using Terms = std::map<Monomial, Scalar, GrlexLess>;

    explicit Poly(int nvars = 0);

    static Poly constant(int nvars, const Scalar &c);
    static Poly variable(int nvars, int var);
    static Poly monomial(int nvars, const Monomial &m, const Scalar &c);

    int nvars() const
    {
        return nvars_;
    }
    const Terms &terms() const
    {
        return terms_;
    }
    std::size_t size() const
    {
        return terms_.size();
    }

    bool is_zero() const
    {
        return terms_.empty();
    }
    bool is_constant() const;
    Scalar constant_term() const;
    Scalar coeff(const Monomial &m) const;

    // -1 for the zero polynomial.
    int total_degree() const;
    int min_degree() const;
    int degree_in(int var) const;
    bool involves(int var) const;
    // Highest-index variable present, or -1.
    int main_variable() const;

    void add_term(const Monomial &m, const Scalar &c);

    Poly &operator+=(const Poly &o);
    Poly &operator-=(const Poly &o);
    Poly &operator*=(const Scalar &c);
    friend Poly operator+(Poly a, const Poly &b)
    {
        return a += b;
    }
    friend Poly operator-(Poly a, const Poly &b)
    {
        return a -= b;
    }
    friend Poly operator*(Poly a, const Scalar &c)
    {
        return a *= c;
    }
    friend Poly operator*(const Poly &a, const Poly &b)
    {
        return a.mul(b);
    }
    Poly operator-() const;
    friend bool operator==(const Poly &a, const Poly &b);
    friend bool operator!=(const Poly &a, const Poly &b)
    {
        return !(a == b);
    }

    Poly mul(const Poly &o) const;
    // Product with every term of total degree >= limit dropped.
    Poly mul_truncated(const Poly &o, int limit) const;
    Poly pow(unsigned k) const;
    Poly truncated(int limit) const;
    // Terms of total degree exactly d.
    Poly homogeneous_part(int d) const;

    Poly derivative(int var) const;
    std::vector<Poly> coeffs_in(int var) const;
    static Poly from_coeffs(int nvars, int var, const std::vector<Poly> &cs);
    Poly substitute(int var, const Poly &value) const;
    Poly evaluate(int var, const Scalar &value) const;
    // Same terms in a context with more variables (indices unchanged).
    Poly widened(int nvars) const;
    // Variables renumbered: new index of var i is map[i].
    Poly remapped(int nvars, const std::vector<int> &map) const;

    // Coefficient of the grlex-largest term.
    Scalar leading_coeff() const;
    Poly monic() const;

    std::string str(const std::vector<std::string> &names) const;

private:
    int nvars_;
    Terms terms_;
};

std::string monomial_str(const Monomial &m, const std::vector<std::string> &names);

// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Poly> divide_exact(const Poly &a, const Poly &b);
// Greatest common divisor, normalized monic in grlex; gcd(0, 0) = 0.
Poly gcd(const Poly &a, const Poly &b);
// Content with respect to var (gcd of the coefficients in var).
Poly content(const Poly &a, int var);
Poly prem(const Poly &a, const Poly &b, int var);
// a = prod_i parts[i]^(i+1), up to a constant; parts are monic squarefree.
std::vector<Poly> squarefree_decomposition(const Poly &a);
// Largest k with h^k | a, and the cofactor a / h^k. Requires h nonconstant.
std::pair<int, Poly> multiplicity(const Poly &a, const Poly &h);

} // namespace zeq

#endif
