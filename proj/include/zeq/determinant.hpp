#ifndef ZEQ_DETERMINANT_HPP
#define ZEQ_DETERMINANT_HPP

#include <cstddef>
#include <vector>

namespace zeq
{

template <typename R>
using Matrix = std::vector<std::vector<R>>;

// Division-free determinant (Berkowitz). Works over any commutative ring,
// including jet rings with nilpotents. `zero` and `one` carry whatever
// context the ring elements need.
template <typename R>
R berkowitz_det(const Matrix<R> &a, const R &zero, const R &one)
{
    const std::size_t n = a.size();
    if (n == 0) {
        return one;
    }
    // coeffs of the characteristic polynomial of the leading r x r block,
    // highest degree first.
    std::vector<R> c{one, zero - a[0][0]};
    for (std::size_t r = 1; r < n; ++r) {
        // Toeplitz column: 1, -a_rr, -R S, -R M S, ..., -R M^{r-1} S
        std::vector<R> t;
        t.reserve(r + 2);
        t.push_back(one);
        t.push_back(zero - a[r][r]);
        std::vector<R> s(r, zero);
        for (std::size_t i = 0; i < r; ++i) {
            s[i] = a[i][r];
        }
        for (std::size_t k = 0; k < r; ++k) {
            R dot = zero;
            for (std::size_t j = 0; j < r; ++j) {
                dot = dot + a[r][j] * s[j];
            }
            t.push_back(zero - dot);
            if (k + 1 == r) {
                break;
            }
            std::vector<R> ms(r, zero);
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < r; ++j) {
                    ms[i] = ms[i] + a[i][j] * s[j];
                }
            }
            s = std::move(ms);
        }
        std::vector<R> next(r + 2, zero);
        for (std::size_t i = 0; i < r + 2; ++i) {
            for (std::size_t j = 0; j <= i && j < c.size(); ++j) {
                next[i] = next[i] + t[i - j] * c[j];
            }
        }
        c = std::move(next);
    }
    return (n % 2 == 0) ? c[n] : zero - c[n];
}

// Sylvester resultant of two polynomials given by coefficient lists,
// highest degree first. Entries may live in any commutative ring.
template <typename R>
R sylvester_resultant(const std::vector<R> &p, const std::vector<R> &q, const R &zero, const R &one)
{
    const std::size_t dp = p.size() - 1, dq = q.size() - 1;
    const std::size_t n = dp + dq;
    Matrix<R> m(n, std::vector<R>(n, zero));
    for (std::size_t i = 0; i < dq; ++i) {
        for (std::size_t j = 0; j <= dp; ++j) {
            m[i][i + j] = p[j];
        }
    }
    for (std::size_t i = 0; i < dp; ++i) {
        for (std::size_t j = 0; j <= dq; ++j) {
            m[dq + i][i + j] = q[j];
        }
    }
    return berkowitz_det(m, zero, one);
}

} // namespace zeq

#endif
