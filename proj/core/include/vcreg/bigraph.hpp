#pragma once

#include "vcreg/bits.hpp"
#include "vcreg/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace vcreg {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

enum class Side : std::uint8_t { X, Y };

constexpr Side opposite(Side s) { return s == Side::X ? Side::Y : Side::X; }
constexpr const char* side_name(Side s) { return s == Side::X ? "X" : "Y"; }

/**
 * A relation E subset of X x Y over dense 0-based vertex indices.
 *
 * Both the row store (E_x as a bitset over Y) and the column store (E^y as a
 * bitset over X) are materialized. Immutable after construction.
 */
class BipartiteRelation {
public:
    /// Throws InvalidArgument on zero sizes, out-of-range endpoints or
    /// duplicate edges.
    BipartiteRelation(std::size_t n_x, std::size_t n_y, std::span<const Edge> edges);
    /// Builds from the row store; columns are derived.
    BipartiteRelation(std::size_t n_x, std::size_t n_y, std::vector<Bits> rows);

    std::size_t n_x() const { return n_x_; }
    std::size_t n_y() const { return n_y_; }
    std::size_t side_size(Side s) const { return s == Side::X ? n_x_ : n_y_; }
    std::size_t edge_count() const { return edge_count_; }

    bool has_edge(Vertex x, Vertex y) const { return rows_[x].test(y); }

    /// E_x, a bitset over Y.
    const Bits& row(Vertex x) const { return rows_[x]; }
    /// E^y, a bitset over X.
    const Bits& col(Vertex y) const { return cols_[y]; }
    /// Neighborhood of v, a vertex on side s, as a bitset over the other side.
    const Bits& neighborhood(Side s, Vertex v) const { return s == Side::X ? rows_[v] : cols_[v]; }

    /// Edges in increasing (x, y) order.
    std::vector<Edge> edges() const;

    friend bool operator==(const BipartiteRelation& a, const BipartiteRelation& b)
    {
        return a.n_x_ == b.n_x_ && a.n_y_ == b.n_y_ && a.rows_ == b.rows_;
    }

private:
    void build_columns();

    std::size_t n_x_;
    std::size_t n_y_;
    std::size_t edge_count_ = 0;
    std::vector<Bits> rows_;
    std::vector<Bits> cols_;
};

/// A side-tagged subset of X or Y.
class VertexSubset {
public:
    VertexSubset(Side side, Bits members);
    /// Throws InvalidArgument if an index is >= ground_size.
    VertexSubset(Side side, std::size_t ground_size, std::span<const Vertex> members);

    static VertexSubset full(Side side, std::size_t ground_size);
    static VertexSubset empty(Side side, std::size_t ground_size);
    static VertexSubset full(const BipartiteRelation& g, Side side) { return full(side, g.side_size(side)); }

    Side side() const { return side_; }
    std::size_t ground_size() const { return members_.size(); }
    const Bits& members() const { return members_; }
    std::size_t size() const { return members_.count(); }
    bool empty() const { return members_.none(); }
    bool contains(Vertex v) const { return members_.test(v); }
    std::vector<Vertex> indices() const;

    friend bool operator==(const VertexSubset&, const VertexSubset&) = default;

private:
    Side side_;
    Bits members_;
};

/// |s| / ground_size.
Rational mu(const VertexSubset& s);

/// |E intersect (sx x sy)|.
std::size_t edge_count(const BipartiteRelation& g, const VertexSubset& sx, const VertexSubset& sy);

/// |E intersect (sx x sy)| / (|sx| |sy|). Throws EmptySideError if either is empty.
Rational density(const BipartiteRelation& g, const VertexSubset& sx, const VertexSubset& sy);

/// |(N(a) xor N(b)) intersect within| / |within| for a, b on `side`; `within`
/// lives on the opposite side. Throws EmptySideError if `within` is empty.
Rational sym_diff_measure(const BipartiteRelation& g, Vertex a, Vertex b, Side side,
                          const VertexSubset& within);

/// E intersect (sx x sy), reindexed densely in increasing vertex order.
BipartiteRelation restrict_relation(const BipartiteRelation& g, const VertexSubset& sx,
                                    const VertexSubset& sy);

/// The transposed relation (X and Y swapped).
BipartiteRelation transpose(const BipartiteRelation& g);

} // namespace vcreg
