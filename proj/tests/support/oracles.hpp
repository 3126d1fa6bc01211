#pragma once

// Brute-force reference implementations used by the unit and acceptance
// tests. They work directly from has_edge and plain loops and share no code
// with the library algorithms they check.

#include "vcreg/bigraph.hpp"
#include "vcreg/epsilon_nets.hpp"
#include "vcreg/partition.hpp"
#include "vcreg/random.hpp"
#include "vcreg/rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using namespace vcreg;

inline BipartiteRelation random_relation(std::size_t n_x, std::size_t n_y, double p, Rng& rng)
{
    std::vector<Edge> edges;
    for (std::size_t x = 0; x < n_x; ++x)
        for (std::size_t y = 0; y < n_y; ++y)
            if (uniform_unit(rng) < p)
                edges.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>(y));
    return BipartiteRelation(n_x, n_y, edges);
}

inline std::vector<std::uint32_t> random_labels(std::size_t n, std::size_t k, Rng& rng)
{
    std::vector<std::uint32_t> labels(n);
    for (auto& l : labels)
        l = static_cast<std::uint32_t>(uniform_below(rng, k));
    return labels;
}

inline Partition random_partition(const BipartiteRelation& g, std::size_t kx, std::size_t ky, Rng& rng)
{
    const auto lx = random_labels(g.n_x(), kx, rng);
    const auto ly = random_labels(g.n_y(), ky, rng);
    return Partition::from_labels(lx, ly);
}

/// Splits every block of `p` into up to `pieces` random parts.
inline Partition random_refinement(const Partition& p, std::size_t pieces, Rng& rng)
{
    std::vector<std::uint32_t> lx(p.ground_size(Side::X)), ly(p.ground_size(Side::Y));
    for (Side s : {Side::X, Side::Y}) {
        auto& labels = s == Side::X ? lx : ly;
        for (std::size_t v = 0; v < labels.size(); ++v)
            labels[v] = static_cast<std::uint32_t>(p.block_of(s, static_cast<Vertex>(v)) * pieces +
                                                   uniform_below(rng, pieces));
    }
    return Partition::from_labels(lx, ly);
}

inline Rational naive_density(const BipartiteRelation& g, const std::vector<Vertex>& xs, const std::vector<Vertex>& ys)
{
    std::int64_t e = 0;
    for (auto x : xs)
        for (auto y : ys)
            e += g.has_edge(x, y) ? 1 : 0;
    return make_rational(e, static_cast<std::int64_t>(xs.size() * ys.size()));
}

inline Rational naive_energy(const BipartiteRelation& g, const Partition& p)
{
    Rational total = 0;
    const auto nx = static_cast<std::int64_t>(g.n_x());
    const auto ny = static_cast<std::int64_t>(g.n_y());
    for (const auto& bx : p.x_blocks())
        for (const auto& by : p.y_blocks()) {
            const auto xs = bx.indices();
            const auto ys = by.indices();
            const Rational d = naive_density(g, xs, ys);
            total += d * d * make_rational(static_cast<std::int64_t>(xs.size()), nx) *
                     make_rational(static_cast<std::int64_t>(ys.size()), ny);
        }
    return total;
}

/// Neighbourhood of v as a set, read through has_edge.
inline std::set<Vertex> nbr_set(const BipartiteRelation& g, Side s, Vertex v)
{
    std::set<Vertex> out;
    const auto other = g.side_size(opposite(s));
    for (std::size_t u = 0; u < other; ++u)
        if (s == Side::X ? g.has_edge(v, static_cast<Vertex>(u)) : g.has_edge(static_cast<Vertex>(u), v))
            out.insert(static_cast<Vertex>(u));
    return out;
}

/// Does {N(v) : v in `side`} shatter I (given as ground indices)?
inline bool naive_shatters(const BipartiteRelation& g, Side side, const std::vector<Vertex>& I)
{
    const std::size_t k = I.size();
    std::set<std::uint64_t> seen;
    for (std::size_t v = 0; v < g.side_size(side); ++v) {
        const auto n = nbr_set(g, side, static_cast<Vertex>(v));
        std::uint64_t code = 0;
        for (std::size_t t = 0; t < k; ++t)
            if (n.count(I[t]))
                code |= std::uint64_t{1} << t;
        seen.insert(code);
    }
    return seen.size() == (std::uint64_t{1} << k);
}

/// VC dimension of {N(v) : v in `side`} by enumerating every subset of the
/// opposite side (ground size <= 16).
inline int naive_vc(const BipartiteRelation& g, Side side)
{
    const auto n = g.side_size(opposite(side));
    int best = 0;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        const int k = std::popcount(mask);
        if (k <= best)
            continue;
        std::vector<Vertex> I;
        for (std::size_t t = 0; t < n; ++t)
            if (mask & (std::uint32_t{1} << t))
                I.push_back(static_cast<Vertex>(t));
        if (naive_shatters(g, side, I))
            best = k;
    }
    return best;
}

/// Number of distinct traces of {N(v) : v in side} on I.
inline std::size_t naive_trace_count(const BipartiteRelation& g, Side side, const std::vector<Vertex>& I)
{
    std::set<std::vector<bool>> seen;
    for (std::size_t v = 0; v < g.side_size(side); ++v) {
        const auto n = nbr_set(g, side, static_cast<Vertex>(v));
        std::vector<bool> t;
        for (auto i : I)
            t.push_back(n.count(i) > 0);
        seen.insert(t);
    }
    return seen.size();
}

/// True iff the block pair has sub-blocks wx, wy with |wx| >= eps |bx|,
/// |wy| >= eps |by| and |d(wx, wy) - d(bx, by)| >= eps. Enumerates every
/// subset of both blocks (each at most 16 vertices), integer arithmetic only.
inline bool naive_irregular(const BipartiteRelation& g, const std::vector<Vertex>& bx, const std::vector<Vertex>& by,
                            std::int64_t eps_num, std::int64_t eps_den)
{
    const auto a = static_cast<std::int64_t>(bx.size());
    const auto b = static_cast<std::int64_t>(by.size());
    std::int64_t e = 0;
    for (auto x : bx)
        for (auto y : by)
            e += g.has_edge(x, y) ? 1 : 0;
    // column masks of by over bx
    std::vector<std::uint32_t> col(by.size(), 0);
    for (std::size_t q = 0; q < by.size(); ++q)
        for (std::size_t p = 0; p < bx.size(); ++p)
            if (g.has_edge(bx[p], by[q]))
                col[q] |= std::uint32_t{1} << p;

    std::vector<std::int64_t> sums(std::size_t{1} << by.size());
    for (std::uint32_t wx = 1; wx < (std::uint32_t{1} << a); ++wx) {
        const std::int64_t m = std::popcount(wx);
        if (m * eps_den < eps_num * a)
            continue;
        sums[0] = 0;
        for (std::uint32_t wy = 1; wy < (std::uint32_t{1} << b); ++wy) {
            const auto low = static_cast<std::size_t>(std::countr_zero(wy));
            sums[wy] = sums[wy & (wy - 1)] + std::popcount(col[low] & wx);
            const std::int64_t k = std::popcount(wy);
            if (k * eps_den < eps_num * b)
                continue;
            // |sums/(m k) - e/(a b)| >= eps  <=>  |sums a b - e m k| * den >= num m k a b
            const std::int64_t diff = sums[wy] * a * b - e * m * k;
            if ((diff < 0 ? -diff : diff) * eps_den >= eps_num * m * k * a * b)
                return true;
        }
    }
    return false;
}

/// All-pairs check of the difference-net property: the smallest pair a < b of
/// index vertices with the same trace on the net whose neighbourhoods differ
/// on at least eps |universe| universe vertices.
inline std::optional<std::pair<Vertex, Vertex>> naive_net_violation(const BipartiteRelation& g,
                                                                    const DifferenceNet& net)
{
    const auto index = net.index_block.indices();
    const auto universe = net.universe.indices();
    const Side s = net.index_block.side();
    std::vector<std::vector<char>> adj(index.size(), std::vector<char>(universe.size()));
    for (std::size_t i = 0; i < index.size(); ++i)
        for (std::size_t k = 0; k < universe.size(); ++k)
            adj[i][k] = s == Side::X ? g.has_edge(index[i], universe[k]) : g.has_edge(universe[k], index[i]);
    std::vector<char> in_net(universe.size());
    for (std::size_t k = 0; k < universe.size(); ++k)
        in_net[k] = net.members.contains(universe[k]);

    const Rational u(static_cast<long>(universe.size()));
    for (std::size_t i = 0; i < index.size(); ++i)
        for (std::size_t j = i + 1; j < index.size(); ++j) {
            bool same_trace = true;
            long diff = 0;
            for (std::size_t k = 0; k < universe.size(); ++k)
                if (adj[i][k] != adj[j][k]) {
                    ++diff;
                    same_trace = same_trace && !in_net[k];
                }
            if (same_trace && Rational(diff) >= net.epsilon * u)
                return std::make_pair(index[i], index[j]);
        }
    return std::nullopt;
}

inline std::vector<Vertex> iota_vertices(std::size_t n)
{
    std::vector<Vertex> v(n);
    std::iota(v.begin(), v.end(), Vertex{0});
    return v;
}

} // namespace oracle
