#ifndef ZEQ_MERO_HPP
#define ZEQ_MERO_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <zeq/deform.hpp>
#include <zeq/jet.hpp>
#include <zeq/poly.hpp>

namespace zeq
{

// unit * prod h_i^(e_i) with pairwise coprime squarefree h_i in two variables.
struct FactoredGerm {
    Scalar unit{1};
    std::vector<std::pair<Poly, int>> factors;

    // Validates exponents, squarefreeness and pairwise coprimality.
    static FactoredGerm make(Scalar unit, std::vector<std::pair<Poly, int>> factors);

    Poly expanded() const;
    // Product of the distinct factors.
    Poly radical() const;
    bool is_real() const;
};

// a dx1 + b dx2
struct OneForm {
    Poly a;
    Poly b;

    Poly coefficient_gcd() const
    {
        return gcd(a, b);
    }
    friend bool operator==(const OneForm &, const OneForm &) = default;
    std::string str(const std::vector<std::string> &names) const;
};

// (rad f rad g / fg)(g df - f dg), by exact division.
OneForm theta(const FactoredGerm &f, const FactoredGerm &g);
// The same form assembled without division:
// sum l_i (R / f_i) df_i - sum k_j (R / g_j) dg_j.
OneForm theta_logarithmic(const FactoredGerm &f, const FactoredGerm &g);

struct DivisorRecord {
    Poly h;
    // May live in a simple extension; its minimal polynomial is c.field().
    Scalar c;
    int mu = 0;
    Poly rho;
};

// The constant c with h | f - c g, the exponent mu with h^(mu+1) the exact
// power of h in f - c g, and the cofactor rho.
std::optional<DivisorRecord> divisor_constant(const Poly &h, const FactoredGerm &f, const FactoredGerm &g);

struct MeroAnalysis {
    std::vector<std::string> names;
    OneForm theta;
    Poly theta_gcd;
    // Records with mu >= 1, in discovery order.
    std::vector<DivisorRecord> records;
    // Candidates that admit a constant but do not divide theta.
    std::vector<DivisorRecord> informational;
    OneForm omega;
    Poly omega_gcd;
    bool isolated = false;
    // Every constant and divisor lies in a totally real field.
    bool real = false;

    int e() const
    {
        return static_cast<int>(records.size());
    }
};

MeroAnalysis analyze(const FactoredGerm &f, const FactoredGerm &g, const std::vector<std::string> &names,
                     const std::vector<Poly> &candidates = {});

struct SystemS {
    // Unknowns in order y1_1..y1_p, y2_1..y2_q, y3_1..y3_e, y4_1..y4_e.
    std::vector<std::string> unknowns;
    std::vector<Poly> equations;
    // Reference solution, one polynomial in (x1, x2) per unknown.
    std::vector<Poly> solution;
    std::vector<bool> satisfied;
    Scalar unit_f{1};
    Scalar unit_g{1};
    std::vector<int> ell;
    std::vector<int> k;
    std::vector<Scalar> c;
    std::vector<int> mu;

    bool all_satisfied() const;
    std::vector<Jet> equation_jets(int order) const;
};

SystemS emit_system(const MeroAnalysis &analysis, const FactoredGerm &f, const FactoredGerm &g);

enum class Isolation { yes, no, unknown };

std::string to_string(Isolation i);

struct SliceReport {
    Scalar t;
    bool exact = false;
    std::optional<bool> matches_input;
    bool division_ok = false;
    Isolation isolated = Isolation::unknown;
    std::optional<int> intersection_multiplicity;
    OneForm theta;
    OneForm omega;
    int order = 0;
};

struct MeroDeformation {
    bool family_ok = false;
    std::vector<SliceReport> slices;
};

// Slices of z(x, t) = z_k0(x) + (1 - t) r_k0(x), z_k0 the degree < k0 part of
// the witness. The family's unknowns must be those of the system.
MeroDeformation build_mero_deformation(const SystemS &sys, const SolutionFamily &family,
                                       const std::vector<Scalar> &tgrid, int k0, const FactoredGerm &f,
                                       const FactoredGerm &g, int order);

} // namespace zeq

#endif
