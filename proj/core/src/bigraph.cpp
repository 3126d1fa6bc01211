#include "vcreg/bigraph.hpp"

#include "vcreg/errors.hpp"

#include <string>

namespace vcreg {

BipartiteRelation::BipartiteRelation(std::size_t n_x, std::size_t n_y, std::span<const Edge> edges)
    : n_x_(n_x), n_y_(n_y)
{
    if (n_x == 0 || n_y == 0)
        throw InvalidArgument("relation sides must be nonempty");
    rows_.assign(n_x, Bits(n_y));
    for (const auto& [x, y] : edges) {
        if (x >= n_x || y >= n_y)
            throw InvalidArgument("edge (" + std::to_string(x) + "," + std::to_string(y) + ") out of range");
        if (rows_[x].test(y))
            throw InvalidArgument("duplicate edge (" + std::to_string(x) + "," + std::to_string(y) + ")");
        rows_[x].set(y);
    }
    edge_count_ = edges.size();
    build_columns();
}

BipartiteRelation::BipartiteRelation(std::size_t n_x, std::size_t n_y, std::vector<Bits> rows)
    : n_x_(n_x), n_y_(n_y), rows_(std::move(rows))
{
    if (n_x == 0 || n_y == 0)
        throw InvalidArgument("relation sides must be nonempty");
    if (rows_.size() != n_x)
        throw InvalidArgument("row count does not match n_x");
    for (const auto& r : rows_) {
        if (r.size() != n_y)
            throw InvalidArgument("row width does not match n_y");
        edge_count_ += r.count();
    }
    build_columns();
}

void BipartiteRelation::build_columns()
{
    cols_.assign(n_y_, Bits(n_x_));
    for (std::size_t x = 0; x < n_x_; ++x)
        rows_[x].for_each([&](std::size_t y) { cols_[y].set(x); });
}

std::vector<Edge> BipartiteRelation::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t x = 0; x < n_x_; ++x)
        rows_[x].for_each([&](std::size_t y) { out.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>(y)); });
    return out;
}

VertexSubset::VertexSubset(Side side, Bits members) : side_(side), members_(std::move(members)) {}

VertexSubset::VertexSubset(Side side, std::size_t ground_size, std::span<const Vertex> members)
    : side_(side), members_(ground_size)
{
    for (auto v : members) {
        if (v >= ground_size)
            throw InvalidArgument("subset member " + std::to_string(v) + " outside ground set of size " +
                                  std::to_string(ground_size));
        members_.set(v);
    }
}

VertexSubset VertexSubset::full(Side side, std::size_t ground_size)
{
    return VertexSubset(side, Bits(ground_size, true));
}

VertexSubset VertexSubset::empty(Side side, std::size_t ground_size)
{
    return VertexSubset(side, Bits(ground_size, false));
}

std::vector<Vertex> VertexSubset::indices() const
{
    std::vector<Vertex> out;
    out.reserve(size());
    members_.for_each([&](std::size_t v) { out.push_back(static_cast<Vertex>(v)); });
    return out;
}

Rational mu(const VertexSubset& s)
{
    if (s.ground_size() == 0)
        throw EmptySideError("measure over an empty ground set");
    return make_rational(static_cast<std::int64_t>(s.size()), static_cast<std::int64_t>(s.ground_size()));
}

namespace {

void check_pair(const BipartiteRelation& g, const VertexSubset& sx, const VertexSubset& sy)
{
    if (sx.side() != Side::X || sy.side() != Side::Y)
        throw InvalidArgument("density expects an X-side and a Y-side subset");
    if (sx.ground_size() != g.n_x() || sy.ground_size() != g.n_y())
        throw GroundMismatchError("subset ground size does not match the relation");
}

} // namespace

std::size_t edge_count(const BipartiteRelation& g, const VertexSubset& sx, const VertexSubset& sy)
{
    check_pair(g, sx, sy);
    std::size_t total = 0;
    sx.members().for_each([&](std::size_t x) { total += intersection_count(g.row(static_cast<Vertex>(x)), sy.members()); });
    return total;
}

Rational density(const BipartiteRelation& g, const VertexSubset& sx, const VertexSubset& sy)
{
    check_pair(g, sx, sy);
    const auto a = sx.size();
    const auto b = sy.size();
    if (a == 0 || b == 0)
        throw EmptySideError("density over an empty side");
    return make_rational(Integer{static_cast<unsigned long>(edge_count(g, sx, sy))},
                         Integer{static_cast<unsigned long>(a)} * static_cast<unsigned long>(b));
}

Rational sym_diff_measure(const BipartiteRelation& g, Vertex a, Vertex b, Side side, const VertexSubset& within)
{
    if (within.side() != opposite(side))
        throw InvalidArgument("`within` must lie on the side opposite to the compared vertices");
    if (within.ground_size() != g.side_size(within.side()))
        throw GroundMismatchError("subset ground size does not match the relation");
    const auto w = within.size();
    if (w == 0)
        throw EmptySideError("symmetric difference measured within an empty set");
    const auto c = masked_xor_count(g.neighborhood(side, a), g.neighborhood(side, b), within.members());
    return make_rational(static_cast<std::int64_t>(c), static_cast<std::int64_t>(w));
}

BipartiteRelation restrict_relation(const BipartiteRelation& g, const VertexSubset& sx, const VertexSubset& sy)
{
    check_pair(g, sx, sy);
    const auto xs = sx.indices();
    const auto ys = sy.indices();
    std::vector<Bits> rows;
    rows.reserve(xs.size());
    for (auto x : xs) {
        Bits r(ys.size());
        for (std::size_t k = 0; k < ys.size(); ++k)
            if (g.has_edge(x, ys[k]))
                r.set(k);
        rows.push_back(std::move(r));
    }
    return BipartiteRelation(xs.size(), ys.size(), std::move(rows));
}

BipartiteRelation transpose(const BipartiteRelation& g)
{
    std::vector<Bits> rows;
    rows.reserve(g.n_y());
    for (std::size_t y = 0; y < g.n_y(); ++y)
        rows.push_back(g.col(static_cast<Vertex>(y)));
    return BipartiteRelation(g.n_y(), g.n_x(), std::move(rows));
}

} // namespace vcreg
