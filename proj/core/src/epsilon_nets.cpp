#include "vcreg/epsilon_nets.hpp"

#include "vcreg/errors.hpp"
#include "vcreg/random.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace vcreg {

void validate(const NetBudget& b)
{
    if (b.d < 1)
        throw InvalidArgument("net budget needs d >= 1");
    if (b.r < 2)
        throw InvalidArgument("net budget needs r >= 2");
    if (!(b.c0 > 0.0))
        throw InvalidArgument("net budget needs c0 > 0");
    if (b.max_rounds < 1)
        throw InvalidArgument("net budget needs max_rounds >= 1");
}

std::size_t net_size_schedule(const NetBudget& b, int round, std::size_t universe_size)
{
    if (round < 0)
        throw InvalidArgument("schedule round must be non-negative");
    const double r = static_cast<double>(b.r);
    const double base = std::ceil(b.c0 * b.d * r * std::log(std::max(r, 2.0)));
    const double size = std::ldexp(base, std::min(round, 1000));
    if (!(size < static_cast<double>(universe_size)))
        return universe_size;
    return static_cast<std::size_t>(size);
}

namespace {

void check_layout(const BipartiteRelation& g, const VertexSubset& index_block, const VertexSubset& universe)
{
    if (index_block.side() != opposite(universe.side()))
        throw InvalidArgument("index block and universe must lie on opposite sides");
    if (universe.ground_size() != g.side_size(universe.side()) ||
        index_block.ground_size() != g.side_size(index_block.side()))
        throw GroundMismatchError("net subsets do not match the relation");
}

/// Smallest integer t with t >= eps * n, so that a count c violates the
/// strict bound (c / n < eps) exactly when c >= t.
std::size_t violation_threshold(const Rational& eps, std::size_t n)
{
    Rational scaled = eps * Rational(Integer{static_cast<unsigned long>(n)});
    Integer t;
    mpz_cdiv_q(t.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    if (t < 0)
        return 0;
    if (!t.fits_ulong_p())
        return static_cast<std::size_t>(-1);
    return static_cast<std::size_t>(t.get_ui());
}

} // namespace

NetCheck check_difference_net(const BipartiteRelation& g, const DifferenceNet& net)
{
    check_layout(g, net.index_block, net.universe);
    const auto u = net.universe.size();
    if (u == 0 || net.index_block.size() < 2)
        return std::nullopt;
    const Side index_side = net.index_block.side();
    const std::size_t threshold = violation_threshold(net.epsilon, u);

    // Classes of index vertices with identical neighborhoods inside the
    // universe; members of one class are at distance 0.
    struct Class {
        Vertex first;
        Bits restricted;
    };
    std::vector<Class> classes;
    std::unordered_map<Bits, std::size_t, BitsHash> class_of;
    net.index_block.members().for_each([&](std::size_t v) {
        Bits restricted = g.neighborhood(index_side, static_cast<Vertex>(v)) & net.universe.members();
        if (class_of.find(restricted) == class_of.end()) {
            class_of.emplace(restricted, classes.size());
            classes.push_back({static_cast<Vertex>(v), std::move(restricted)});
        }
    });

    // Group classes by trace on the net (the net lies inside the universe, so
    // one class has one trace).
    std::unordered_map<Bits, std::vector<std::size_t>, BitsHash> groups;
    std::vector<const std::vector<std::size_t>*> group_order;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        auto [it, inserted] = groups.try_emplace(classes[c].restricted & net.members.members());
        it->second.push_back(c);
        if (inserted)
            group_order.push_back(&it->second);
    }

    std::optional<std::pair<Vertex, Vertex>> best;
    std::size_t best_count = 0;
    for (const auto* group : group_order) {
        const auto& ids = *group;
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                const auto& ci = classes[ids[i]];
                const auto& cj = classes[ids[j]];
                const auto count = (ci.restricted ^ cj.restricted).count();
                if (count < threshold)
                    continue;
                // The smallest pair drawn from two classes joins their minima.
                const std::pair<Vertex, Vertex> pair{std::min(ci.first, cj.first), std::max(ci.first, cj.first)};
                if (!best || pair < *best) {
                    best = pair;
                    best_count = count;
                }
            }
    }
    if (!best)
        return std::nullopt;
    return NetCounterexample{best->first, best->second,
                             make_rational(static_cast<std::int64_t>(best_count), static_cast<std::int64_t>(u))};
}

NetCheck verify_difference_net(const BipartiteRelation& g, DifferenceNet& net)
{
    auto result = check_difference_net(g, net);
    net.verified = !result.has_value();
    return result;
}

DifferenceNet build_difference_net(const BipartiteRelation& g, const VertexSubset& index_block,
                                   const VertexSubset& universe, const NetBudget& b, std::uint64_t seed)
{
    validate(b);
    check_layout(g, index_block, universe);
    if (universe.empty())
        throw EmptySideError("difference net over an empty universe");
    if (index_block.empty())
        throw EmptySideError("difference net for an empty index block");

    DifferenceNet net{universe.side(),
                      universe,
                      index_block,
                      VertexSubset::empty(universe.side(), universe.ground_size()),
                      make_rational(1, b.r),
                      false,
                      {}};

    auto order = universe.indices();
    Rng rng = make_rng(seed, {0x6e6574 /* "net" */});
    shuffle(std::span<Vertex>(order), rng);

    const auto u = order.size();
    for (int round = 0; round < b.max_rounds; ++round) {
        const auto size = net_size_schedule(b, round, u);
        Bits members(universe.ground_size());
        for (std::size_t k = 0; k < size; ++k)
            members.set(order[k]);
        net.members = VertexSubset(universe.side(), std::move(members));
        net.build_stats.samples_drawn += size;
        net.build_stats.resample_rounds = round + 1;
        if (!verify_difference_net(g, net))
            return net;
        if (size == u)
            break;
    }

    net.members = universe;
    net.verified = true;
    net.build_stats.fallback = true;
    return net;
}

} // namespace vcreg
