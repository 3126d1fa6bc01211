#pragma once

#include "vcreg/bigraph.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace vcreg {

/// The pair of nets (X^, Y^) a partition was induced by.
struct NetPair {
    VertexSubset x_net;
    VertexSubset y_net;
    Rational quality;

    static NetPair empty(const BipartiteRelation& g);
    friend bool operator==(const NetPair&, const NetPair&) = default;
};

/// Union of two net pairs; quality is taken from `b`.
NetPair merge(const NetPair& a, const NetPair& b);

/**
 * A pair of partitions ({X_i}, {Y_j}).
 *
 * Blocks are nonempty, pairwise disjoint, cover their side, and are stored in
 * increasing order of their smallest vertex, so two partitions with the same
 * blocks compare equal. Immutable.
 */
class Partition {
public:
    /// Throws InvalidArgument if a side is not a partition of its ground set.
    Partition(std::vector<VertexSubset> x_blocks, std::vector<VertexSubset> y_blocks,
              std::optional<NetPair> provenance = std::nullopt);

    /// Block label of every vertex, per side. Labels need not be dense or ordered.
    static Partition from_labels(std::span<const std::uint32_t> x_labels, std::span<const std::uint32_t> y_labels,
                                 std::optional<NetPair> provenance = std::nullopt);

    static Partition trivial(const BipartiteRelation& g);
    static Partition singletons(const BipartiteRelation& g);

    const std::vector<VertexSubset>& blocks(Side s) const { return s == Side::X ? x_blocks_ : y_blocks_; }
    const std::vector<VertexSubset>& x_blocks() const { return x_blocks_; }
    const std::vector<VertexSubset>& y_blocks() const { return y_blocks_; }
    std::size_t block_count(Side s) const { return blocks(s).size(); }

    /// max(#x_blocks, #y_blocks)
    std::size_t size() const { return std::max(x_blocks_.size(), y_blocks_.size()); }

    std::size_t ground_size(Side s) const { return labels(s).size(); }
    std::span<const std::uint32_t> labels(Side s) const { return s == Side::X ? x_labels_ : y_labels_; }
    std::uint32_t block_of(Side s, Vertex v) const { return labels(s)[v]; }

    const std::optional<NetPair>& provenance() const { return provenance_; }

    friend bool operator==(const Partition& a, const Partition& b)
    {
        return a.x_labels_ == b.x_labels_ && a.y_labels_ == b.y_labels_;
    }

private:
    std::vector<VertexSubset> x_blocks_;
    std::vector<VertexSubset> y_blocks_;
    std::vector<std::uint32_t> x_labels_;
    std::vector<std::uint32_t> y_labels_;
    std::optional<NetPair> provenance_;
};

/// X split by trace on y_net, Y split by trace on x_net.
Partition induced_partition(const BipartiteRelation& g, const NetPair& nets);

/// True iff every block of `fine` lies inside a block of `coarse`, both sides.
/// Throws GroundMismatchError when the ground sets differ.
bool refines(const Partition& fine, const Partition& coarse);

/// Edge counts between blocks, row-major: counts[i * #y_blocks + j].
std::vector<std::uint64_t> block_edge_counts(const BipartiteRelation& g, const Partition& p);

/// sum over (i, j) of d(X_i, Y_j)^2 mu(X_i) mu(Y_j), exactly.
Rational energy(const BipartiteRelation& g, const Partition& p);

/// Energy of the cells (A, B), A in cells_x, B in cells_y, relative to the
/// block (bx, by): sum d(A, B)^2 |A|/|bx| |B|/|by|. The cells must partition
/// bx and by; empty cells are skipped.
Rational local_energy(const BipartiteRelation& g, const VertexSubset& bx, const VertexSubset& by,
                      std::span<const VertexSubset> cells_x, std::span<const VertexSubset> cells_y);

/// The blocks of `fine` intersected with `block` (nonempty intersections only,
/// in block order).
std::vector<VertexSubset> restrict_blocks(const Partition& fine, const VertexSubset& block);

struct ClosenessCounterexample {
    Side side;
    Vertex a;
    Vertex b;
    Rational measure;
};

/// Checks that any two vertices sharing a block have neighborhoods at
/// normalized distance < eps. Returns the first violation (X side first, then
/// lexicographically smallest pair), or nothing.
std::optional<ClosenessCounterexample> block_closeness_check(const BipartiteRelation& g, const Partition& p,
                                                             const Rational& eps);

} // namespace vcreg
