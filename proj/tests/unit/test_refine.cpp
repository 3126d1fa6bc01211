#include "oracles.hpp"

#include "vcreg/errors.hpp"
#include "vcreg/generators.hpp"
#include "vcreg/refine.hpp"
#include "vcreg/vc_dimension.hpp"

#include <doctest.h>

#include <cmath>

using namespace vcreg;

TEST_CASE("iteration cap and increment")
{
    CHECK(iteration_cap(2) == 128000);
    CHECK(iteration_cap(3) == 2187000);
    CHECK(guaranteed_increment(2) == make_rational(1, 128000));
    LoopConfig cfg;
    CHECK(effective_max_iters(cfg) == 128000);
    cfg.max_iters = 5;
    CHECK(effective_max_iters(cfg) == 5);
    cfg.r = 1;
    CHECK_THROWS_AS(validate(cfg), InvalidArgument);
}

TEST_CASE("refine_once: complete relation stays trivial")
{
    const auto g = generate({Family::Complete, 20, 20, 0});
    const LoopState start{NetPair::empty(g), Partition::trivial(g)};
    const auto next = refine_once(g, start, LoopConfig{});
    CHECK(next.partition == Partition::trivial(g));
}

TEST_CASE("refine_once: block-diagonal splits into halves in one round")
{
    const auto g = generate({Family::BlockDiagonal, 16, 16, 0});
    const LoopState start{NetPair::empty(g), Partition::trivial(g)};
    CHECK(energy(g, start.partition) == make_rational(1, 4));
    RoundNetStats stats;
    const auto next = refine_once(g, start, LoopConfig{}, 1, &stats);
    CHECK(next.partition.block_count(Side::X) == 2);
    CHECK(next.partition.block_count(Side::Y) == 2);
    CHECK(energy(g, next.partition) == make_rational(1, 2));
    CHECK(refines(next.partition, start.partition));
    CHECK(stats.nets_built == 2);
}

TEST_CASE("regularize: complete relation stops before refining")
{
    const auto g = generate({Family::Complete, 12, 12, 0});
    const auto res = regularize(g, LoopConfig{});
    CHECK(res.outcome == Outcome::Regular);
    CHECK(res.rounds() == 0);
    CHECK(res.partition == Partition::trivial(g));
}

TEST_CASE("regularize: block-diagonal reaches the four-block partition")
{
    for (std::size_t n : {8, 64}) {
        const auto g = generate({Family::BlockDiagonal, n, n, 0});
        const auto res = regularize(g, LoopConfig{});
        CHECK(res.outcome == Outcome::Regular);
        CHECK(res.rounds() <= 2);
        CHECK(res.trace.back().rho == make_rational(1, 2));
        CHECK(res.partition.block_count(Side::X) == 2);
        CHECK(res.partition.block_count(Side::Y) == 2);
        CHECK(res.report.certified());
    }
}

TEST_CASE("regularize: iteration cap and stagnation are reported")
{
    const auto g = generate({Family::IntervalIncidence, 60, 60, 3});
    LoopConfig cfg;
    cfg.r = 4;
    cfg.d = 2;
    cfg.max_iters = 1;
    cfg.net_budget.c0 = 0.05;
    cfg.net_budget.max_rounds = 1;
    const auto res = regularize(g, cfg);
    CHECK(res.rounds() <= 1);
    CHECK(std::string(outcome_name(res.outcome)) != "");
    if (res.outcome != Outcome::Regular)
        CHECK(res.outcome == Outcome::IterationCapped);
}

TEST_CASE("property: traces are monotone refinement chains with valid forecasts")
{
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto g = generate({Family::IntervalIncidence, 80, 80, seed});
        LoopConfig cfg;
        cfg.r = 3;
        cfg.d = 2;
        cfg.seed = seed;
        cfg.net_budget.c0 = 0.2;
        cfg.audit_vc = true;
        LoopState state{NetPair::empty(g), Partition::trivial(g)};
        Rational rho = energy(g, state.partition);
        for (std::uint64_t round = 1; round <= 3; ++round) {
            auto next = refine_once(g, state, cfg, round);
            CHECK(refines(next.partition, state.partition));
            const Rational after = energy(g, next.partition);
            CHECK(after >= rho);
            CHECK(static_cast<double>(next.partition.block_count(Side::X)) <=
                  block_count_forecast(cfg.d, next.nets.y_net.size(), g.n_x()));
            CHECK(static_cast<double>(next.partition.block_count(Side::Y)) <=
                  block_count_forecast(cfg.d, next.nets.x_net.size(), g.n_y()));
            rho = after;
            state = std::move(next);
        }
        const auto res = regularize(g, cfg);
        for (std::size_t k = 1; k < res.trace.size(); ++k)
            CHECK(res.trace[k].rho >= res.trace[k - 1].rho);
        for (const auto& rec : res.trace) {
            CHECK(rec.forecast_ok);
            REQUIRE(rec.vc_audit_violation.has_value());
            CHECK_FALSE(*rec.vc_audit_violation);
        }
        CHECK(res.rounds() <= effective_max_iters(cfg));
    }
}

TEST_CASE("property: certified irregularity forces the guaranteed increment")
{
    // Exact tester throughout: blocks stay small enough for exhaustive checks.
    // Noisy block-diagonal instances are irregular at 1/3 until split.
    Rng rng = make_rng(61, {});
    std::size_t checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Bits> rows(10, Bits(10));
        for (std::size_t x = 0; x < 10; ++x)
            for (std::size_t y = 0; y < 10; ++y)
                if (((x < 5) == (y < 5)) != (uniform_unit(rng) < 0.1))
                    rows[x].set(y);
        const BipartiteRelation g(10, 10, std::move(rows));
        LoopConfig cfg;
        cfg.r = 3;
        cfg.d = 4;
        cfg.seed = static_cast<std::uint64_t>(trial);
        cfg.tester.exact_only = true;
        LoopState state{NetPair::empty(g), Partition::trivial(g)};
        for (std::uint64_t round = 1; round <= 3; ++round) {
            const auto rep = partition_regularity(g, state.partition, make_rational(1, 3), cfg.tester);
            if (rep.regular())
                break;
            auto next = refine_once(g, state, cfg, round);
            CHECK(energy(g, next.partition) - energy(g, state.partition) >= guaranteed_increment(cfg.r));
            ++checked;
            state = std::move(next);
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("theoretical_bounds: examples")
{
    const auto b0 = theoretical_bounds(2, 2, 0);
    CHECK(b0.iter_cap == 128000);
    const double base = 8.0 * 2 * 8 * std::log(8.0);
    CHECK(b0.size_at_iter.value == doctest::Approx(base));
    const auto b3 = theoretical_bounds(2, 2, 3);
    CHECK(b3.size_at_iter.log2 == doctest::Approx(std::pow(2.0, 6) * std::log2(base)));
    CHECK(b3.final_size.overflow);
    CHECK_THROWS_AS(theoretical_bounds(0, 2, 0), DomainError);
    const auto f = lemma_size_forecast(4, 2, 2);
    CHECK(f.log2 == doctest::Approx(2 * std::log2(4 * base)));
}
