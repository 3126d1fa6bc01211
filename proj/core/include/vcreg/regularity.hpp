#pragma once

#include "vcreg/bigraph.hpp"
#include "vcreg/partition.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace vcreg {

/// Sub-pair (wx, wy) of the block pair (i, j) whose density is at least
/// `defect` away from the block density.
struct IrregularityWitness {
    std::size_t i = 0;
    std::size_t j = 0;
    VertexSubset wx;
    VertexSubset wy;
    Rational defect;
};

/// Recomputes the witness from scratch: both size conditions
/// (|wx| >= eps |bx|, |wy| >= eps |by|, subsets of the blocks), the stored
/// defect, and defect >= eps.
bool witness_is_valid(const BipartiteRelation& g, const VertexSubset& bx, const VertexSubset& by,
                      const IrregularityWitness& w, const Rational& eps);

/// |d(bx, by) - d(wx, wy)|, exactly.
Rational regularity_defect(const BipartiteRelation& g, const VertexSubset& bx, const VertexSubset& by,
                           const VertexSubset& wx, const VertexSubset& wy);

inline constexpr std::size_t default_exact_cap = 14;

/**
 * Exhaustive eps-regularity test of (bx, by).
 *
 * Every subset of the smaller block (at least eps of it) is enumerated; for a
 * fixed subset the extreme densities over subsets of the other block of each
 * admissible size are attained by its top-k / bottom-k vertices by degree, so
 * the search over the larger side is exact without enumeration.
 *
 * Returns nothing if the pair is eps-regular, else a witness of maximal
 * defect. Throws TooLargeForExact if min(|bx|, |by|) > size_cap.
 */
std::optional<IrregularityWitness> pair_regular_exact(const BipartiteRelation& g, const VertexSubset& bx,
                                                      const VertexSubset& by, const Rational& eps,
                                                      std::size_t size_cap = default_exact_cap);

/// One-sided randomized refuter. Any returned witness has defect >= eps
/// (recomputed exactly); nothing means no witness was found.
std::optional<IrregularityWitness> find_witness_sampled(const BipartiteRelation& g, const VertexSubset& bx,
                                                        const VertexSubset& by, const Rational& eps,
                                                        std::size_t trials, std::uint64_t seed);

enum class PairVerdict : std::uint8_t {
    RegularCertified,
    IrregularWitnessed,
    RegularProbable,
};

const char* verdict_name(PairVerdict v);

struct TesterConfig {
    std::size_t exact_cap = default_exact_cap;
    std::size_t trials = 16;
    std::uint64_t seed = 0;
    /// Refuse to fall back to sampling (throws TooLargeForExact instead).
    bool exact_only = false;
};

/**
 * Verdicts for every block pair of a partition.
 *
 * Pair (i, j) is stored at verdicts[i * #y_blocks + j]. Only witnessed pairs
 * contribute to irregular_mass; probable verdicts are tallied separately in
 * uncertain_mass.
 */
struct RegularityReport {
    Rational epsilon;
    std::size_t x_blocks = 0;
    std::size_t y_blocks = 0;
    std::vector<PairVerdict> verdicts;
    std::vector<IrregularityWitness> witnesses;
    Rational irregular_mass;
    Rational uncertain_mass;
    TesterConfig config;

    PairVerdict verdict(std::size_t i, std::size_t j) const { return verdicts[i * y_blocks + j]; }
    std::size_t count(PairVerdict v) const;

    /// irregular_mass < epsilon
    bool regular() const { return irregular_mass < epsilon; }
    /// Still regular if every probable pair were irregular.
    bool certified() const { return irregular_mass + uncertain_mass < epsilon; }
};

RegularityReport partition_regularity(const BipartiteRelation& g, const Partition& p, const Rational& eps,
                                      const TesterConfig& cfg = {});

struct BoostStats {
    Rational mu_x;          ///< |X~| / |bx|
    Rational mu_y;          ///< |Y~| / |by|
    Rational density;       ///< d(X~, Y~) in the oriented relation
    Rational base_density;  ///< d(bx, by) in the oriented relation
    bool complemented = false;
};

struct BoostResult {
    VertexSubset x_tilde;
    VertexSubset y_tilde;
    BoostStats stats;
};

/**
 * Amplifies a witness into unions of blocks of `fine` restricted to (bx, by).
 *
 * X~' = {x in bx : |E_x n wy| / |wy| >= D + 1/2r}, X~ = union of fine blocks
 * meeting X~'; Y~' = {y in by : |E^y n X~| / |X~| >= D + 1/5r}, Y~ likewise.
 * A witness of low density (d(wx, wy) <= D - 1/r) is handled by complementing
 * E inside bx x by; stats are then reported for the complement.
 *
 * Throws InvalidArgument if the witness is not 1/r-strong, DegenerateWitness
 * if X~' or Y~' is empty.
 */
BoostResult witness_boost(const BipartiteRelation& g, const VertexSubset& bx, const VertexSubset& by,
                          const IrregularityWitness& w, std::int64_t r, const Partition& fine);

/// Local energy of ({X~, bx \ X~}, {Y~, by \ Y~}) minus d(bx, by)^2.
Rational two_block_energy_gain(const BipartiteRelation& g, const VertexSubset& bx, const VertexSubset& by,
                               const VertexSubset& x_tilde, const VertexSubset& y_tilde);

} // namespace vcreg
