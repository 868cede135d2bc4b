#ifndef ZEQ_TOWER_HPP
#define ZEQ_TOWER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <zeq/jet.hpp>
#include <zeq/pseudopoly.hpp>
#include <zeq/weierstrass.hpp>

namespace zeq
{

struct TowerOptions {
    std::uint64_t seed = 0;
    Exec exec = Exec::parallel;
};

// One rung of the ladder. Level i works in x_1..x_i and prepares `source`
// (the germ itself at the top, otherwise the first nonzero generalized
// discriminant of the level above) as unit * f_i in x_i.
struct TowerLevel {
    int index = 0;
    int var = 0;
    Jet source;
    // Discriminant index l_{i+1} that produced `source`; 0 at the top.
    int source_index = 0;
    LinearChange change;
    Jet unit;
    PseudoPolynomial poly;
    GenDiscSequence gendisc;

    int degree() const
    {
        return poly.degree();
    }
    // l_i: first nonzero generalized discriminant of f_i.
    int disc_index() const
    {
        return gendisc.first_nonzero;
    }
};

enum class Termination { unit_reached, trivial };

std::string to_string(Termination t);

struct Tower {
    CtxPtr ctx;
    // Top level first.
    std::vector<TowerLevel> levels;
    Termination termination = Termination::trivial;
    // u_0 when a unit is reached at the bottom; otherwise the unit that
    // ended the descent early.
    std::optional<Jet> terminal;
    int terminal_index = 0;
    int order = 0;
    // Every identity in the tower holds as polynomials, not just mod order.
    bool exact = true;
    // Per-factor prepared blocks of a system; empty for a single germ.
    std::vector<PseudoPolynomial> factor_blocks;

    // (p_i, l_i) from the top level down.
    std::vector<std::pair<int, int>> signature() const;
};

Tower build_tower(const Jet &f, const TowerOptions &opts = {});
Tower build_tower_system(const std::vector<Jet> &gs, const TowerOptions &opts = {});

struct LevelCheck {
    int index = 0;
    bool identity = false;
    bool vanishing = false;
    int order = 0;
};

struct TowerCheck {
    std::vector<LevelCheck> levels;
    bool terminal = true;
    bool passed() const;
};

TowerCheck verify_tower(const Tower &tw);

enum class Verdict { equisingular, not_equisingular, inconclusive };

std::string to_string(Verdict v);

struct FamilyLevel {
    int index = 0;
    Jet source;
    LinearChange change;
    int degree = 0;
    int disc_index = 0;
    std::optional<Jet> unit;
    std::optional<PseudoPolynomial> poly;
    // Every coefficient of the prepared polynomial vanishes on {x = 0}.
    bool coeffs_vanish = true;
};

struct FamilyReport {
    Verdict verdict = Verdict::inconclusive;
    std::vector<FamilyLevel> levels;
    std::optional<Jet> witness;
    std::string reason;
    std::optional<Jet> terminal_unit;
    int order = 0;
    std::vector<std::string> notes;
};

// F lives in a context whose parameter block is t and coordinate block x.
FamilyReport check_family(const Jet &F, const TowerOptions &opts = {});

// F with the parameters set to rational values, in the coordinate-only context.
Jet specialize_params(const Jet &F, const std::vector<Scalar> &values);

} // namespace zeq

#endif
