#include "vcreg/refine.hpp"

#include "vcreg/errors.hpp"
#include "vcreg/parallel.hpp"
#include "vcreg/random.hpp"
#include "vcreg/vc_dimension.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace vcreg {

void validate(const LoopConfig& cfg)
{
    if (cfg.r < 2)
        throw InvalidArgument("loop needs r >= 2");
    if (cfg.d < 1)
        throw InvalidArgument("loop needs d >= 1");
    if (!(cfg.net_budget.c0 > 0.0) || cfg.net_budget.max_rounds < 1)
        throw InvalidArgument("loop needs c0 > 0 and max_rounds >= 1");
}

std::uint64_t iteration_cap(std::int64_t r)
{
    unsigned __int128 v = 1000;
    for (int k = 0; k < 7; ++k) {
        v *= static_cast<unsigned __int128>(r);
        if (v > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(v);
}

std::uint64_t effective_max_iters(const LoopConfig& cfg)
{
    return cfg.max_iters == 0 ? iteration_cap(cfg.r) : cfg.max_iters;
}

Rational guaranteed_increment(std::int64_t r)
{
    Integer den = 1000;
    for (int k = 0; k < 7; ++k)
        den *= static_cast<long>(r);
    return make_rational(Integer{1}, den);
}

const char* outcome_name(Outcome o)
{
    switch (o) {
    case Outcome::Regular:
        return "regular";
    case Outcome::IterationCapped:
        return "capped";
    case Outcome::Stagnated:
        return "stagnated";
    }
    return "unknown";
}

LoopState refine_once(const BipartiteRelation& g, const LoopState& state, const LoopConfig& cfg, std::uint64_t round,
                      RoundNetStats* stats)
{
    validate(cfg);
    NetBudget budget = cfg.net_budget;
    budget.d = cfg.d;
    budget.r = 10 * cfg.r * cfg.r * cfg.r;

    const auto& p = state.partition;
    const auto n = p.block_count(Side::X);
    const auto m = p.block_count(Side::Y);
    const auto all_x = VertexSubset::full(g, Side::X);
    const auto all_y = VertexSubset::full(g, Side::Y);

    std::vector<std::optional<DifferenceNet>> nets(n + m);
    parallel_for(n + m, [&](std::size_t k) {
        if (k < n)
            nets[k] = build_difference_net(g, all_y, p.x_blocks()[k], budget, derive_seed(cfg.seed, {round, 0, k}));
        else
            nets[k] = build_difference_net(g, all_x, p.y_blocks()[k - n], budget,
                                           derive_seed(cfg.seed, {round, 1, k - n}));
    });

    Bits x_net = state.nets.x_net.members();
    Bits y_net = state.nets.y_net.members();
    RoundNetStats local;
    for (std::size_t k = 0; k < n + m; ++k) {
        (k < n ? x_net : y_net) |= nets[k]->members.members();
        ++local.nets_built;
        local.samples_drawn += nets[k]->build_stats.samples_drawn;
        if (nets[k]->build_stats.fallback)
            ++local.fallbacks;
    }
    if (stats)
        *stats = local;

    NetPair merged{VertexSubset(Side::X, std::move(x_net)), VertexSubset(Side::Y, std::move(y_net)),
                   make_rational(1, budget.r)};
    auto next = induced_partition(g, merged);
    return {std::move(merged), std::move(next)};
}

double block_count_forecast(int d, std::size_t net_size, std::size_t side_size)
{
    const double cap = static_cast<double>(side_size);
    if (net_size < static_cast<std::size_t>(d))
        return std::min(cap, std::ldexp(1.0, static_cast<int>(net_size)));
    return std::min(cap, sauer_shelah_bound(d, net_size));
}

namespace {

bool vc_audit(const BipartiteRelation& g, int d, std::uint64_t seed)
{
    constexpr std::size_t sample = 12;
    Rng rng = make_rng(seed, {0x617564 /* "aud" */});
    auto pick = [&](Side s) {
        std::vector<Vertex> all(g.side_size(s));
        for (std::size_t v = 0; v < all.size(); ++v)
            all[v] = static_cast<Vertex>(v);
        shuffle(std::span<Vertex>(all), rng);
        all.resize(std::min(sample, all.size()));
        return VertexSubset(s, g.side_size(s), all);
    };
    const auto sx = pick(Side::X);
    const auto sy = pick(Side::Y);
    return vc_dimension_of_restriction(g, sx, sy, d).exceeds_cap;
}

} // namespace

RunResult regularize(const BipartiteRelation& g, const LoopConfig& cfg)
{
    validate(cfg);
    using clock = std::chrono::steady_clock;
    const Rational eps = make_rational(1, cfg.r);
    const Rational min_gain = guaranteed_increment(cfg.r);
    const auto max_iters = effective_max_iters(cfg);

    auto tester_for = [&](std::uint64_t iter) {
        TesterConfig t = cfg.tester;
        t.seed = derive_seed(cfg.seed, {iter, 0x74657374 /* "test" */});
        return t;
    };

    auto record_for = [&](std::uint64_t iter, const LoopState& s, const RegularityReport& rep, clock::time_point t0) {
        EnergyRecord rec;
        rec.iter = iter;
        rec.rho = energy(g, s.partition);
        rec.parts_x = s.partition.block_count(Side::X);
        rec.parts_y = s.partition.block_count(Side::Y);
        rec.net_x_size = s.nets.x_net.size();
        rec.net_y_size = s.nets.y_net.size();
        rec.irregular_mass = rep.irregular_mass;
        rec.uncertain_mass = rep.uncertain_mass;
        rec.certified = rep.certified();
        rec.forecast_ok = static_cast<double>(rec.parts_x) <= block_count_forecast(cfg.d, rec.net_y_size, g.n_x()) &&
                          static_cast<double>(rec.parts_y) <= block_count_forecast(cfg.d, rec.net_x_size, g.n_y());
        if (cfg.audit_vc)
            rec.vc_audit_violation = vc_audit(g, cfg.d, derive_seed(cfg.seed, {iter, 0x617564}));
        rec.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        return rec;
    };

    auto t0 = clock::now();
    LoopState state{NetPair::empty(g), Partition::trivial(g)};
    auto report = partition_regularity(g, state.partition, eps, tester_for(0));
    std::vector<EnergyRecord> trace;
    trace.push_back(record_for(0, state, report, t0));

    Outcome outcome = Outcome::IterationCapped;
    if (report.certified()) {
        outcome = Outcome::Regular;
    } else {
        int quiet = report.witnesses.empty() ? 1 : 0;
        for (std::uint64_t iter = 1; iter <= max_iters; ++iter) {
            t0 = clock::now();
            state = refine_once(g, state, cfg, iter);
            report = partition_regularity(g, state.partition, eps, tester_for(iter));
            trace.push_back(record_for(iter, state, report, t0));
            if (report.certified()) {
                outcome = Outcome::Regular;
                break;
            }
            quiet = report.witnesses.empty() ? quiet + 1 : 0;
            const Rational gain = trace.back().rho - trace[trace.size() - 2].rho;
            if (gain < min_gain && quiet >= 2) {
                outcome = Outcome::Stagnated;
                break;
            }
        }
    }

    return {std::move(state.partition), std::move(state.nets), std::move(trace), std::move(report), outcome};
}

namespace {

BoundValue make_bound(double log2_value, double log2_log2)
{
    BoundValue b;
    b.log2 = log2_value;
    b.log2_log2 = log2_log2;
    b.overflow = !(log2_value < 1023.0);
    b.value = b.overflow ? std::numeric_limits<double>::infinity() : std::exp2(log2_value);
    return b;
}

double size_base(int d, std::int64_t r, double c1)
{
    const double r3 = std::pow(static_cast<double>(r), 3.0);
    return c1 * d * r3 * std::log(r3);
}

} // namespace

TheoreticalBounds theoretical_bounds(int d, std::int64_t r, std::uint64_t i, double c1)
{
    if (d < 1 || r < 2)
        throw DomainError("theoretical bounds need d >= 1 and r >= 2");
    TheoreticalBounds out;
    out.c1 = c1;
    out.iter_cap = iteration_cap(r);
    out.formula = "(c1*d*r^3*ln(r^3))^(d^(2*i))";

    const double lb = std::log2(size_base(d, r, c1));
    auto at = [&](std::uint64_t step) {
        // log2 size = d^(2 step) * log2(base)
        const double exponent_log2 = 2.0 * static_cast<double>(step) * std::log2(static_cast<double>(d));
        const double log2_value = std::exp2(exponent_log2) * lb;
        return make_bound(log2_value, exponent_log2 + std::log2(lb));
    };
    out.size_at_iter = at(i);
    out.final_size = at(out.iter_cap);
    return out;
}

BoundValue lemma_size_forecast(std::size_t parts, int d, std::int64_t r, double c1)
{
    if (d < 1 || r < 2)
        throw DomainError("forecast needs d >= 1 and r >= 2");
    const double lb = std::log2(static_cast<double>(parts) * size_base(d, r, c1));
    const double log2_value = d * lb;
    return make_bound(log2_value, std::log2(d) + std::log2(lb));
}

} // namespace vcreg
