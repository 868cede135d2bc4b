#ifndef ZEQ_SCALAR_HPP
#define ZEQ_SCALAR_HPP

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace zeq
{

// Simple algebraic extension Q(a) = Q[a]/(m(a)). The minimal polynomial is
// stored monic, coefficients from low to high degree.
struct ExtField {
    std::string generator;
    std::vector<mpq_class> minpoly;

    ExtField(std::string gen, std::vector<mpq_class> m);

    std::size_t degree() const
    {
        return minpoly.size() - 1;
    }

    bool same_as(const ExtField &other) const;
};

using FieldPtr = std::shared_ptr<const ExtField>;

// Exact scalar: a rational, or an element of one simple extension of Q.
// Extension elements whose non-constant part vanishes are demoted to plain
// rationals, so equality never depends on representation.
class Scalar
{
public:
    Scalar() = default;
    Scalar(long v) : q_(v) {}
    Scalar(int v) : q_(v) {}
    Scalar(mpq_class v) : q_(std::move(v))
    {
        q_.canonicalize();
    }

    static Scalar from_string(const std::string &s);
    static Scalar generator(const FieldPtr &field);
    // Element sum_i coeffs[i] * a^i of the given field (reduced on entry).
    static Scalar from_ext(const FieldPtr &field, std::vector<mpq_class> coeffs);

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const
    {
        return field_ == nullptr;
    }
    const mpq_class &rational() const;
    const FieldPtr &field() const
    {
        return field_;
    }
    // Coefficients in the power basis 1, a, a^2, ... (size = field degree).
    const std::vector<mpq_class> &ext_coeffs() const
    {
        return ext_;
    }

    Scalar inverse() const;

    Scalar &operator+=(const Scalar &o);
    Scalar &operator-=(const Scalar &o);
    Scalar &operator*=(const Scalar &o);
    Scalar &operator/=(const Scalar &o);

    friend Scalar operator+(Scalar a, const Scalar &b)
    {
        return a += b;
    }
    friend Scalar operator-(Scalar a, const Scalar &b)
    {
        return a -= b;
    }
    friend Scalar operator*(Scalar a, const Scalar &b)
    {
        return a *= b;
    }
    friend Scalar operator/(Scalar a, const Scalar &b)
    {
        return a /= b;
    }
    Scalar operator-() const;

    friend bool operator==(const Scalar &a, const Scalar &b);
    friend bool operator!=(const Scalar &a, const Scalar &b)
    {
        return !(a == b);
    }

    std::string str() const;

private:
    void normalize();
    static FieldPtr common_field(const Scalar &a, const Scalar &b);
    std::vector<mpq_class> as_coeffs(const FieldPtr &f) const;

    mpq_class q_{0};
    FieldPtr field_;
    std::vector<mpq_class> ext_;
};

} // namespace zeq

#endif
