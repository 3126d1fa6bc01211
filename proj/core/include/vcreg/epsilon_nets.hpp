#pragma once

#include "vcreg/bigraph.hpp"

#include <cstdint>
#include <optional>

namespace vcreg {

/// Sizing policy for difference nets. Net quality is epsilon = 1/r; c0 is the
/// constant hidden in the O(d r ln r) size bound.
struct NetBudget {
    int d = 1;
    std::int64_t r = 2;
    double c0 = 8.0;
    int max_rounds = 6;
};

/// Throws InvalidArgument unless d >= 1, r >= 2, c0 > 0, max_rounds >= 1.
void validate(const NetBudget& b);

/// ceil(c0 d r ln max(r,2)) * 2^round, capped at universe_size.
std::size_t net_size_schedule(const NetBudget& b, int round, std::size_t universe_size);

struct NetBuildStats {
    std::size_t samples_drawn = 0;
    int resample_rounds = 0;
    bool fallback = false;
};

/**
 * An epsilon-net for differences living inside `universe`.
 *
 * `members` is a subset of `universe` (both on side `side`). The net is meant
 * to separate the neighborhoods of the `index_block` vertices (opposite side):
 * whenever two of them have the same trace on `members`, their neighborhoods
 * differ on fewer than epsilon * |universe| elements of `universe`.
 */
struct DifferenceNet {
    Side side;
    VertexSubset universe;
    VertexSubset index_block;
    VertexSubset members;
    Rational epsilon;
    bool verified = false;
    NetBuildStats build_stats;
};

/// A same-trace pair of index vertices whose neighborhoods are too far apart.
struct NetCounterexample {
    Vertex a;
    Vertex b;
    Rational measure;
};

/// Empty on success.
using NetCheck = std::optional<NetCounterexample>;

/**
 * Samples prefixes of a seeded permutation of `universe` with sizes
 * net_size_schedule(b, 0), net_size_schedule(b, 1), ... and returns the first
 * one that verifies at epsilon = 1/b.r. After b.max_rounds failures the whole
 * universe is returned, which always verifies.
 */
DifferenceNet build_difference_net(const BipartiteRelation& g, const VertexSubset& index_block,
                                   const VertexSubset& universe, const NetBudget& b, std::uint64_t seed);

/// Checks the net by grouping index vertices by their trace on the members.
/// On failure returns the lexicographically smallest violating pair (a < b).
/// Sets net.verified accordingly.
NetCheck verify_difference_net(const BipartiteRelation& g, DifferenceNet& net);

/// Same check without touching the flag.
NetCheck check_difference_net(const BipartiteRelation& g, const DifferenceNet& net);

} // namespace vcreg
