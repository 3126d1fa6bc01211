#include "vcreg/partition.hpp"

#include "vcreg/errors.hpp"

#include <limits>
#include <map>
#include <unordered_map>

namespace vcreg {

NetPair NetPair::empty(const BipartiteRelation& g)
{
    return {VertexSubset::empty(Side::X, g.n_x()), VertexSubset::empty(Side::Y, g.n_y()), Rational(1)};
}

NetPair merge(const NetPair& a, const NetPair& b)
{
    if (a.x_net.ground_size() != b.x_net.ground_size() || a.y_net.ground_size() != b.y_net.ground_size())
        throw GroundMismatchError("merging nets over different ground sets");
    return {VertexSubset(Side::X, a.x_net.members() | b.x_net.members()),
            VertexSubset(Side::Y, a.y_net.members() | b.y_net.members()), b.quality};
}

namespace {

constexpr std::uint32_t unassigned = std::numeric_limits<std::uint32_t>::max();

/// Sorts blocks by smallest member and derives the label array.
std::vector<std::uint32_t> canonicalize(std::vector<VertexSubset>& blocks, Side side)
{
    if (blocks.empty())
        throw InvalidArgument(std::string("partition of side ") + side_name(side) + " has no blocks");
    const auto n = blocks.front().ground_size();
    for (const auto& b : blocks) {
        if (b.side() != side)
            throw InvalidArgument("block on the wrong side");
        if (b.ground_size() != n)
            throw GroundMismatchError("blocks over different ground sets");
        if (b.empty())
            throw InvalidArgument("partition blocks must be nonempty");
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const VertexSubset& a, const VertexSubset& b) { return a.members().first() < b.members().first(); });

    std::vector<std::uint32_t> labels(n, unassigned);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        blocks[i].members().for_each([&](std::size_t v) {
            if (labels[v] != unassigned)
                throw InvalidArgument("partition blocks overlap at vertex " + std::to_string(v));
            labels[v] = static_cast<std::uint32_t>(i);
        });
    for (std::size_t v = 0; v < n; ++v)
        if (labels[v] == unassigned)
            throw InvalidArgument("partition blocks do not cover vertex " + std::to_string(v));
    return labels;
}

/// Groups vertices of `side` by their neighborhood restricted to `net`,
/// labelling classes in order of first occurrence.
std::vector<std::uint32_t> trace_labels(const BipartiteRelation& g, Side side, const Bits& net)
{
    const auto n = g.side_size(side);
    std::vector<std::uint32_t> labels(n);
    std::unordered_map<Bits, std::uint32_t, BitsHash> seen;
    for (std::size_t v = 0; v < n; ++v) {
        Bits trace = g.neighborhood(side, static_cast<Vertex>(v)) & net;
        auto [it, inserted] = seen.try_emplace(std::move(trace), static_cast<std::uint32_t>(seen.size()));
        labels[v] = it->second;
    }
    return labels;
}

Integer to_integer(unsigned __int128 v)
{
    Integer hi{static_cast<unsigned long>(v >> 64)};
    Integer lo{static_cast<unsigned long>(v & ~std::uint64_t{0})};
    return (hi << 64) + lo;
}

} // namespace

Partition::Partition(std::vector<VertexSubset> x_blocks, std::vector<VertexSubset> y_blocks,
                     std::optional<NetPair> provenance)
    : x_blocks_(std::move(x_blocks)), y_blocks_(std::move(y_blocks)), provenance_(std::move(provenance))
{
    x_labels_ = canonicalize(x_blocks_, Side::X);
    y_labels_ = canonicalize(y_blocks_, Side::Y);
}

Partition Partition::from_labels(std::span<const std::uint32_t> x_labels, std::span<const std::uint32_t> y_labels,
                                 std::optional<NetPair> provenance)
{
    auto build = [](std::span<const std::uint32_t> labels, Side side) {
        std::unordered_map<std::uint32_t, std::size_t> slot;
        std::vector<Bits> bits;
        for (std::size_t v = 0; v < labels.size(); ++v) {
            auto [it, inserted] = slot.try_emplace(labels[v], bits.size());
            if (inserted)
                bits.emplace_back(labels.size());
            bits[it->second].set(v);
        }
        std::vector<VertexSubset> blocks;
        blocks.reserve(bits.size());
        for (auto& b : bits)
            blocks.emplace_back(side, std::move(b));
        return blocks;
    };
    return Partition(build(x_labels, Side::X), build(y_labels, Side::Y), std::move(provenance));
}

Partition Partition::trivial(const BipartiteRelation& g)
{
    return Partition({VertexSubset::full(g, Side::X)}, {VertexSubset::full(g, Side::Y)}, NetPair::empty(g));
}

Partition Partition::singletons(const BipartiteRelation& g)
{
    std::vector<std::uint32_t> xl(g.n_x()), yl(g.n_y());
    for (std::size_t i = 0; i < xl.size(); ++i)
        xl[i] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 0; j < yl.size(); ++j)
        yl[j] = static_cast<std::uint32_t>(j);
    return from_labels(xl, yl);
}

Partition induced_partition(const BipartiteRelation& g, const NetPair& nets)
{
    if (nets.x_net.ground_size() != g.n_x() || nets.y_net.ground_size() != g.n_y())
        throw GroundMismatchError("nets do not match the relation");
    const auto xl = trace_labels(g, Side::X, nets.y_net.members());
    const auto yl = trace_labels(g, Side::Y, nets.x_net.members());
    return Partition::from_labels(xl, yl, nets);
}

bool refines(const Partition& fine, const Partition& coarse)
{
    for (Side s : {Side::X, Side::Y}) {
        if (fine.ground_size(s) != coarse.ground_size(s))
            throw GroundMismatchError("partitions over different ground sets");
        const auto coarse_labels = coarse.labels(s);
        for (const auto& block : fine.blocks(s)) {
            const auto rep = coarse_labels[block.members().first()];
            bool inside = true;
            block.members().for_each([&](std::size_t v) { inside = inside && coarse_labels[v] == rep; });
            if (!inside)
                return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> block_edge_counts(const BipartiteRelation& g, const Partition& p)
{
    if (p.ground_size(Side::X) != g.n_x() || p.ground_size(Side::Y) != g.n_y())
        throw GroundMismatchError("partition does not match the relation");
    const auto m = p.block_count(Side::Y);
    const auto xl = p.labels(Side::X);
    const auto yl = p.labels(Side::Y);
    std::vector<std::uint64_t> counts(p.block_count(Side::X) * m, 0);
    for (std::size_t x = 0; x < g.n_x(); ++x) {
        auto* row = counts.data() + static_cast<std::size_t>(xl[x]) * m;
        g.row(static_cast<Vertex>(x)).for_each([&](std::size_t y) { ++row[yl[y]]; });
    }
    return counts;
}

Rational energy(const BipartiteRelation& g, const Partition& p)
{
    const auto counts = block_edge_counts(g, p);
    const auto n = p.block_count(Side::X);
    const auto m = p.block_count(Side::Y);
    std::vector<std::uint64_t> a(n), b(m);
    for (std::size_t i = 0; i < n; ++i)
        a[i] = p.x_blocks()[i].size();
    for (std::size_t j = 0; j < m; ++j)
        b[j] = p.y_blocks()[j].size();

    // rho = (1 / (n_x n_y)) * sum e_ij^2 / (a_i b_j); terms are bucketed by
    // their denominator so the rational sum only sees distinct denominators.
    std::map<std::uint64_t, unsigned __int128> buckets;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const auto e = counts[i * m + j];
            if (e == 0)
                continue;
            buckets[a[i] * b[j]] += static_cast<unsigned __int128>(e) * e;
        }
    Rational total = 0;
    for (const auto& [den, num] : buckets)
        total += Rational(to_integer(num), Integer{static_cast<unsigned long>(den)});
    total.canonicalize();
    total /= Rational(Integer{static_cast<unsigned long>(g.n_x())} * static_cast<unsigned long>(g.n_y()));
    return total;
}

Rational local_energy(const BipartiteRelation& g, const VertexSubset& bx, const VertexSubset& by,
                      std::span<const VertexSubset> cells_x, std::span<const VertexSubset> cells_y)
{
    const auto a = bx.size();
    const auto b = by.size();
    if (a == 0 || b == 0)
        throw EmptySideError("local energy of an empty block");
    Rational total = 0;
    for (const auto& cx : cells_x) {
        if (cx.empty())
            continue;
        for (const auto& cy : cells_y) {
            if (cy.empty())
                continue;
            // d^2 * |cx|/a * |cy|/b = e^2 / (|cx| |cy| a b)
            const Integer e{static_cast<unsigned long>(edge_count(g, cx, cy))};
            if (e == 0)
                continue;
            total += Rational(e * e, Integer{static_cast<unsigned long>(cx.size())} * static_cast<unsigned long>(cy.size()));
        }
    }
    total.canonicalize();
    total /= Rational(Integer{static_cast<unsigned long>(a)} * static_cast<unsigned long>(b));
    return total;
}

std::vector<VertexSubset> restrict_blocks(const Partition& fine, const VertexSubset& block)
{
    std::vector<VertexSubset> out;
    if (block.ground_size() != fine.ground_size(block.side()))
        throw GroundMismatchError("block does not match the partition");
    for (const auto& fb : fine.blocks(block.side())) {
        Bits cut = fb.members() & block.members();
        if (cut.any())
            out.emplace_back(block.side(), std::move(cut));
    }
    return out;
}

std::optional<ClosenessCounterexample> block_closeness_check(const BipartiteRelation& g, const Partition& p,
                                                             const Rational& eps)
{
    for (Side s : {Side::X, Side::Y}) {
        if (p.ground_size(s) != g.side_size(s))
            throw GroundMismatchError("partition does not match the relation");
        const auto other = g.side_size(opposite(s));
        // Smallest t with t >= eps * other.
        Rational scaled = eps * Rational(Integer{static_cast<unsigned long>(other)});
        Integer threshold;
        mpz_cdiv_q(threshold.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());

        std::optional<std::pair<Vertex, Vertex>> best;
        std::size_t best_count = 0;
        for (const auto& block : p.blocks(s)) {
            // Vertices with equal neighborhoods are at distance 0.
            std::vector<Vertex> reps;
            std::unordered_map<Bits, std::size_t, BitsHash> seen;
            block.members().for_each([&](std::size_t v) {
                if (seen.try_emplace(g.neighborhood(s, static_cast<Vertex>(v)), reps.size()).second)
                    reps.push_back(static_cast<Vertex>(v));
            });
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = i + 1; j < reps.size(); ++j) {
                    const auto c = (g.neighborhood(s, reps[i]) ^ g.neighborhood(s, reps[j])).count();
                    if (Integer{static_cast<unsigned long>(c)} < threshold)
                        continue;
                    const std::pair<Vertex, Vertex> pair{reps[i], reps[j]};
                    if (!best || pair < *best) {
                        best = pair;
                        best_count = c;
                    }
                }
        }
        if (best)
            return ClosenessCounterexample{
                s, best->first, best->second,
                make_rational(static_cast<std::int64_t>(best_count), static_cast<std::int64_t>(other))};
    }
    return std::nullopt;
}

} // namespace vcreg
