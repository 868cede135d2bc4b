#include <zeq/kernels.hpp>

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zeq::kernels
{

Poly mul_truncated_serial(const Poly &a, const Poly &b, int limit)
{
    return a.mul_truncated(b, limit);
}

Poly mul_truncated_parallel(const Poly &a, const Poly &b, int limit)
{
    const int nv = std::max(a.nvars(), b.nvars());
    std::vector<const Poly::Terms::value_type *> left;
    left.reserve(a.size());
    for (const auto &t : a.terms()) {
        left.push_back(&t);
    }
    const int nterms = static_cast<int>(left.size());
    const int nthreads = max_threads();
    std::vector<Poly> partial(static_cast<std::size_t>(nthreads), Poly(nv));

#pragma omp parallel num_threads(nthreads)
    {
#ifdef _OPENMP
        const int tid = omp_get_thread_num();
#else
        const int tid = 0;
#endif
        Poly &acc = partial[static_cast<std::size_t>(tid)];
#pragma omp for schedule(static)
        for (int i = 0; i < nterms; ++i) {
            const auto &[ma, ca] = *left[static_cast<std::size_t>(i)];
            const int da = ma.degree();
            for (const auto &[mb, cb] : b.terms()) {
                if (limit >= 0 && da + mb.degree() >= limit) {
                    break;
                }
                acc.add_term(ma * mb, ca * cb);
            }
        }
    }

    Poly out(nv);
    for (const auto &p : partial) {
        out += p;
    }
    return out;
}

Poly mul_truncated(const Poly &a, const Poly &b, int limit)
{
    if (a.size() * b.size() >= kParallelMulThreshold && max_threads() > 1) {
        return mul_truncated_parallel(a, b, limit);
    }
    return mul_truncated_serial(a, b, limit);
}

void for_each_index_serial(int n, const std::function<void(int)> &f)
{
    for (int i = 0; i < n; ++i) {
        f(i);
    }
}

void for_each_index_parallel(int n, const std::function<void(int)> &f)
{
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            f(i);
        } catch (...) {
#pragma omp critical(zeq_kernel_failure)
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace zeq::kernels
