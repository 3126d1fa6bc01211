#include "oracles.hpp"

#include "vcreg/errors.hpp"
#include "vcreg/generators.hpp"
#include "vcreg/regularity.hpp"

#include <doctest.h>

using namespace vcreg;

namespace {

VertexSubset sub(Side s, std::size_t n, std::vector<Vertex> v)
{
    return VertexSubset(s, n, v);
}

// X = A u B, Y = C u D with A, C the first halves; E = (A x C) u (B x D).
struct BlockDiagonal {
    std::size_t n;
    BipartiteRelation g;
    VertexSubset a, b, c, d;

    explicit BlockDiagonal(std::size_t size)
        : n(size),
          g(generate({Family::BlockDiagonal, size, size, 0})),
          a(half(Side::X, true)),
          b(half(Side::X, false)),
          c(half(Side::Y, true)),
          d(half(Side::Y, false))
    {
    }

    VertexSubset half(Side s, bool first) const
    {
        std::vector<Vertex> v;
        for (Vertex i = 0; i < n; ++i)
            if ((i < n / 2) == first)
                v.push_back(i);
        return VertexSubset(s, n, v);
    }
    VertexSubset all(Side s) const { return VertexSubset::full(s, n); }
};

} // namespace

TEST_CASE("pair_regular_exact: examples")
{
    const auto k = generate({Family::Complete, 6, 6, 0});
    CHECK_FALSE(pair_regular_exact(k, VertexSubset::full(k, Side::X), VertexSubset::full(k, Side::Y),
                                   make_rational(1, 10), 14));

    const BlockDiagonal bd(8);
    const auto w = pair_regular_exact(bd.g, bd.all(Side::X), bd.all(Side::Y), make_rational(1, 4), 14);
    REQUIRE(w);
    CHECK(w->defect == make_rational(1, 2));
    CHECK(witness_is_valid(bd.g, bd.all(Side::X), bd.all(Side::Y), *w, make_rational(1, 4)));
    // The planted witness attains the maximal defect.
    CHECK(regularity_defect(bd.g, bd.all(Side::X), bd.all(Side::Y), bd.a, bd.c) == make_rational(1, 2));

    const auto m = generate({Family::Matching, 4, 4, 0});
    CHECK_FALSE(pair_regular_exact(m, sub(Side::X, 4, {1}), sub(Side::Y, 4, {1}), 1, 14));
    CHECK_FALSE(pair_regular_exact(m, sub(Side::X, 4, {1}), sub(Side::Y, 4, {2}), make_rational(1, 3), 14));
}

TEST_CASE("pair_regular_exact: preconditions")
{
    const BlockDiagonal bd(8);
    CHECK_THROWS_AS(pair_regular_exact(bd.g, bd.all(Side::X), bd.all(Side::Y), 0, 14), InvalidArgument);
    CHECK_THROWS_AS(pair_regular_exact(bd.g, bd.all(Side::X), bd.all(Side::Y), 2, 14), InvalidArgument);
    CHECK_THROWS_AS(pair_regular_exact(bd.g, bd.all(Side::X), bd.all(Side::Y), make_rational(1, 4), 3),
                    TooLargeForExact);
    CHECK_THROWS_AS(pair_regular_exact(bd.g, VertexSubset::empty(Side::X, 8), bd.all(Side::Y), make_rational(1, 4), 14),
                    EmptySideError);
}

TEST_CASE("find_witness_sampled: examples")
{
    const BlockDiagonal bd(40);
    const auto w = find_witness_sampled(bd.g, bd.all(Side::X), bd.all(Side::Y), make_rational(1, 4), 50, 7);
    REQUIRE(w);
    CHECK(witness_is_valid(bd.g, bd.all(Side::X), bd.all(Side::Y), *w, make_rational(1, 4)));
    CHECK(w->defect == make_rational(1, 2));

    const auto k = generate({Family::Complete, 30, 30, 0});
    CHECK_FALSE(find_witness_sampled(k, VertexSubset::full(k, Side::X), VertexSubset::full(k, Side::Y),
                                     make_rational(1, 4), 50, 7));
    CHECK_THROWS_AS(find_witness_sampled(k, VertexSubset::full(k, Side::X), VertexSubset::full(k, Side::Y),
                                         make_rational(1, 4), 0, 7),
                    InvalidArgument);
}

TEST_CASE("partition_regularity: examples")
{
    const BlockDiagonal bd(8);
    const auto eps = make_rational(1, 4);
    const auto singles = partition_regularity(bd.g, Partition::singletons(bd.g), eps);
    CHECK(singles.regular());
    CHECK(singles.certified());
    CHECK(singles.irregular_mass == 0);

    const auto trivial = partition_regularity(bd.g, Partition::trivial(bd.g), eps);
    CHECK(trivial.irregular_mass == 1);
    CHECK_FALSE(trivial.regular());
    REQUIRE(trivial.witnesses.size() == 1);
    CHECK(trivial.verdict(0, 0) == PairVerdict::IrregularWitnessed);

    const Partition split({bd.a, bd.b}, {bd.c, bd.d});
    const auto rep = partition_regularity(bd.g, split, eps, TesterConfig{14, 16, 0, true});
    CHECK(rep.certified());
    CHECK(rep.count(PairVerdict::RegularCertified) == 4);
}

TEST_CASE("partition_regularity: sampled mode and exact_only")
{
    const BlockDiagonal bd(40);
    const auto eps = make_rational(1, 4);
    const auto rep = partition_regularity(bd.g, Partition::trivial(bd.g), eps, TesterConfig{14, 16, 3, false});
    CHECK(rep.irregular_mass == 1);
    CHECK_THROWS_AS(partition_regularity(bd.g, Partition::trivial(bd.g), eps, TesterConfig{14, 16, 3, true}),
                    TooLargeForExact);

    Rng rng = make_rng(51, {});
    const auto g = oracle::random_relation(40, 40, 0.5, rng);
    const auto r2 = partition_regularity(g, Partition::trivial(g), make_rational(1, 2), TesterConfig{14, 4, 1, false});
    CHECK(r2.verdict(0, 0) == PairVerdict::RegularProbable);
    CHECK(r2.regular());
    CHECK(r2.uncertain_mass == 1);
    CHECK_FALSE(r2.certified());
}

TEST_CASE("witness_boost: block-diagonal example")
{
    const BlockDiagonal bd(8);
    const IrregularityWitness w{0, 0, bd.a, bd.c, make_rational(1, 2)};
    const auto res = witness_boost(bd.g, bd.all(Side::X), bd.all(Side::Y), w, 2, Partition::singletons(bd.g));
    CHECK(res.x_tilde == bd.a);
    CHECK(res.y_tilde == bd.c);
    CHECK(res.stats.density == 1);
    CHECK(res.stats.density >= res.stats.base_density + make_rational(1, 20));
    CHECK_FALSE(res.stats.complemented);

    // Low-density witness: (A, D) has density 0 and is handled by complementing.
    const IrregularityWitness low{0, 0, bd.a, bd.d, make_rational(1, 2)};
    const auto comp = witness_boost(bd.g, bd.all(Side::X), bd.all(Side::Y), low, 2, Partition::singletons(bd.g));
    CHECK(comp.stats.complemented);
    CHECK(comp.x_tilde == bd.a);
    CHECK(comp.y_tilde == bd.d);

    const IrregularityWitness weak{0, 0, bd.all(Side::X), bd.all(Side::Y), 0};
    CHECK_THROWS_AS(witness_boost(bd.g, bd.all(Side::X), bd.all(Side::Y), weak, 2, Partition::singletons(bd.g)),
                    InvalidArgument);
}

TEST_CASE("two_block_energy_gain: examples")
{
    const BlockDiagonal bd(8);
    CHECK(two_block_energy_gain(bd.g, bd.all(Side::X), bd.all(Side::Y), bd.all(Side::X), bd.all(Side::Y)) == 0);
    CHECK(two_block_energy_gain(bd.g, bd.all(Side::X), bd.all(Side::Y), bd.a, bd.c) == make_rational(1, 4));
}

TEST_CASE("property: exact tester matches subset enumeration; witnesses re-validate")
{
    Rng rng = make_rng(52, {});
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t nx = 1 + uniform_below(rng, 9);
        const std::size_t ny = 1 + uniform_below(rng, 9);
        const auto g = oracle::random_relation(nx, ny, uniform_unit(rng), rng);
        const auto p = oracle::random_partition(g, 1 + uniform_below(rng, 2), 1 + uniform_below(rng, 2), rng);
        const std::int64_t den = 2 + static_cast<std::int64_t>(uniform_below(rng, 4));
        const auto eps = make_rational(1, den);
        const auto rep = partition_regularity(g, p, eps, TesterConfig{14, 16, 0, true});
        for (std::size_t i = 0; i < p.block_count(Side::X); ++i)
            for (std::size_t j = 0; j < p.block_count(Side::Y); ++j) {
                const bool naive = oracle::naive_irregular(g, p.x_blocks()[i].indices(), p.y_blocks()[j].indices(), 1, den);
                CHECK(naive == (rep.verdict(i, j) == PairVerdict::IrregularWitnessed));
            }
        for (const auto& w : rep.witnesses)
            CHECK(witness_is_valid(g, p.x_blocks()[w.i], p.y_blocks()[w.j], w, eps));
    }
}

TEST_CASE("property: sampled witnesses are always genuine")
{
    Rng rng = make_rng(53, {});
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 20 + uniform_below(rng, 40);
        const auto g = oracle::random_relation(n, n, 0.3 + 0.4 * uniform_unit(rng), rng);
        const auto bx = VertexSubset::full(g, Side::X);
        const auto by = VertexSubset::full(g, Side::Y);
        const auto eps = make_rational(1, 8);
        if (const auto w = find_witness_sampled(g, bx, by, eps, 8, trial)) {
            CHECK(witness_is_valid(g, bx, by, *w, eps));
            const auto base = oracle::naive_density(g, bx.indices(), by.indices());
            const auto sub = oracle::naive_density(g, w->wx.indices(), w->wy.indices());
            CHECK(w->defect == abs(base - sub));
        }
    }
}
