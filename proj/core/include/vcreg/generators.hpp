#pragma once

#include "vcreg/bigraph.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace vcreg {

enum class Family : std::uint8_t {
    IntervalIncidence, ///< X: random intervals in [0,1], Y: random points, edge iff contained
    BoxIncidence,      ///< X: random axis-parallel boxes in [0,1]^dim, Y: points
    Threshold,         ///< X, Y: random reals, edge iff a_x <= b_y
    BlockDiagonal,     ///< (A x C) u (B x D) with A, C the first halves
    Matching,          ///< (i, i) for i < min(n_x, n_y)
    Complete,
    ErdosRenyi,        ///< each edge independently with probability p
    Powerset,          ///< X = all subsets of Y, |Y| = k, n_x = 2^k
};

struct FamilySpec {
    Family family = Family::Complete;
    std::size_t n_x = 1;
    std::size_t n_y = 1;
    std::uint64_t seed = 0;
    double p = 0.5;
    int dim = 2;
};

Family parse_family(std::string_view name);
std::string family_name(Family f);

/// Throws SpecError on invalid parameters.
void validate(const FamilySpec& spec);

/**
 * Deterministic for a fixed spec. Geometric families draw X-side objects and
 * Y-side points from separate streams derived from (seed, family, side), so
 * changing one side's size never perturbs the other side's draws.
 */
BipartiteRelation generate(const FamilySpec& spec);

} // namespace vcreg
