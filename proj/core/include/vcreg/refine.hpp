#pragma once

#include "vcreg/bigraph.hpp"
#include "vcreg/epsilon_nets.hpp"
#include "vcreg/partition.hpp"
#include "vcreg/regularity.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vcreg {

struct LoopConfig {
    /// Target: a 1/r-regular partition.
    std::int64_t r = 2;
    /// Assumed bound on the VC dimension of the relation.
    int d = 1;
    /// Only c0 and max_rounds are taken from here; d is cfg.d and the net
    /// quality is 1/(10 r^3).
    NetBudget net_budget{};
    /// 0 selects the default 10^3 r^7.
    std::uint64_t max_iters = 0;
    std::uint64_t seed = 0;
    TesterConfig tester{};
    /// Spot-check vc_dimension <= d on a random small restriction each round.
    bool audit_vc = false;
};

void validate(const LoopConfig& cfg);

/// 10^3 r^7, saturating at UINT64_MAX.
std::uint64_t iteration_cap(std::int64_t r);
std::uint64_t effective_max_iters(const LoopConfig& cfg);

/// Minimum energy gain per round promised for irregular partitions: 1/(10^3 r^7).
Rational guaranteed_increment(std::int64_t r);

struct LoopState {
    NetPair nets;
    Partition partition;
};

struct RoundNetStats {
    std::size_t nets_built = 0;
    std::size_t fallbacks = 0;
    std::size_t samples_drawn = 0;
};

/**
 * One refinement step: a verified 1/(10 r^3)-net for differences is built
 * inside every block (X-blocks separate the columns E^y under the block
 * measure, Y-blocks the rows), the nets are added to the current ones, and
 * the induced partition is returned. The result refines state.partition.
 */
LoopState refine_once(const BipartiteRelation& g, const LoopState& state, const LoopConfig& cfg,
                      std::uint64_t round = 0, RoundNetStats* stats = nullptr);

enum class Outcome : std::uint8_t { Regular, IterationCapped, Stagnated };

const char* outcome_name(Outcome o);

struct EnergyRecord {
    std::uint64_t iter = 0;
    Rational rho;
    std::size_t parts_x = 0;
    std::size_t parts_y = 0;
    std::size_t net_x_size = 0;
    std::size_t net_y_size = 0;
    Rational irregular_mass;
    Rational uncertain_mass;
    bool certified = false;
    double wall_ms = 0.0;
    /// Block counts within the Sauer-Shelah forecast from the net sizes.
    bool forecast_ok = true;
    /// Set when the VC audit ran; true if it found a restriction exceeding d.
    std::optional<bool> vc_audit_violation;
};

struct RunResult {
    Partition partition;
    NetPair nets;
    std::vector<EnergyRecord> trace;
    RegularityReport report;
    Outcome outcome = Outcome::IterationCapped;

    std::uint64_t rounds() const { return trace.empty() ? 0 : trace.back().iter; }
};

/**
 * Refines from the trivial partition until the tester certifies
 * 1/r-regularity, the iteration cap is hit, or the energy gain stays below
 * 1/(10^3 r^7) while the tester finds no witnessed irregular pair on two
 * consecutive rounds. The trivial partition is tested first (iteration 0).
 */
RunResult regularize(const BipartiteRelation& g, const LoopConfig& cfg);

/// Block-count forecast: min(side, (e |net| / d)^d) or 2^|net| when |net| < d.
double block_count_forecast(int d, std::size_t net_size, std::size_t side_size);

/// A bound that may be astronomically large; always carried as log2.
struct BoundValue {
    double log2 = 0.0;
    /// log2(log2(value)); finite even when log2 overflows.
    double log2_log2 = 0.0;
    bool overflow = false;
    /// 2^log2 when representable, else +inf.
    double value = 0.0;
};

struct TheoreticalBounds {
    std::uint64_t iter_cap = 0;
    BoundValue size_at_iter;
    BoundValue final_size;
    /// (c1 d r^3 ln r^3)^(d^(2 i)) with c1 left symbolic.
    std::string formula;
    double c1 = 8.0;
};

TheoreticalBounds theoretical_bounds(int d, std::int64_t r, std::uint64_t i, double c1 = 8.0);

/// Per-round forecast (c1 |P| d r^3 ln r^3)^d.
BoundValue lemma_size_forecast(std::size_t parts, int d, std::int64_t r, double c1 = 8.0);

} // namespace vcreg
