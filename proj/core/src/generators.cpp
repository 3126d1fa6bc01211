#include "vcreg/generators.hpp"

#include "vcreg/errors.hpp"
#include "vcreg/random.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace vcreg {
namespace {

constexpr std::array<std::pair<std::string_view, Family>, 8> family_names{{
    {"interval-incidence", Family::IntervalIncidence},
    {"box-incidence", Family::BoxIncidence},
    {"threshold", Family::Threshold},
    {"block-diagonal", Family::BlockDiagonal},
    {"matching", Family::Matching},
    {"complete", Family::Complete},
    {"erdos-renyi", Family::ErdosRenyi},
    {"powerset", Family::Powerset},
}};

// Stream labels for the side-wise draws.
constexpr std::uint64_t x_stream = 1;
constexpr std::uint64_t y_stream = 2;

BipartiteRelation from_predicate(std::size_t n_x, std::size_t n_y, auto&& adjacent)
{
    std::vector<Bits> rows(n_x, Bits(n_y));
    for (std::size_t x = 0; x < n_x; ++x)
        for (std::size_t y = 0; y < n_y; ++y)
            if (adjacent(x, y))
                rows[x].set(y);
    return BipartiteRelation(n_x, n_y, std::move(rows));
}

} // namespace

Family parse_family(std::string_view name)
{
    for (const auto& [n, f] : family_names)
        if (n == name)
            return f;
    throw SpecError("unknown family: " + std::string(name));
}

std::string family_name(Family f)
{
    for (const auto& [n, fam] : family_names)
        if (fam == f)
            return std::string(n);
    return "unknown";
}

void validate(const FamilySpec& spec)
{
    if (spec.n_x < 1 || spec.n_y < 1)
        throw SpecError("sizes must be >= 1");
    if (!(spec.p >= 0.0 && spec.p <= 1.0))
        throw SpecError("p must lie in [0, 1]");
    switch (spec.family) {
    case Family::BlockDiagonal:
        if (spec.n_x < 2 || spec.n_y < 2)
            throw SpecError("block-diagonal needs both sides >= 2");
        break;
    case Family::BoxIncidence:
        if (spec.dim < 1 || spec.dim > 16)
            throw SpecError("box dimension must lie in [1, 16]");
        break;
    case Family::Powerset:
        if (spec.n_y > 20)
            throw SpecError("powerset limited to |Y| <= 20");
        if (spec.n_x != (std::size_t{1} << spec.n_y))
            throw SpecError("powerset needs n_x = 2^n_y");
        break;
    default:
        break;
    }
}

BipartiteRelation generate(const FamilySpec& spec)
{
    validate(spec);
    const auto fam = static_cast<std::uint64_t>(spec.family);
    const auto n_x = spec.n_x;
    const auto n_y = spec.n_y;

    switch (spec.family) {
    case Family::IntervalIncidence: {
        Rng xr = make_rng(spec.seed, {fam, x_stream});
        Rng yr = make_rng(spec.seed, {fam, y_stream});
        std::vector<std::pair<double, double>> intervals(n_x);
        for (auto& iv : intervals) {
            const double u = uniform_unit(xr);
            const double v = uniform_unit(xr);
            iv = {std::min(u, v), std::max(u, v)};
        }
        std::vector<double> points(n_y);
        for (auto& pt : points)
            pt = uniform_unit(yr);
        return from_predicate(n_x, n_y, [&](std::size_t x, std::size_t y) {
            return intervals[x].first <= points[y] && points[y] <= intervals[x].second;
        });
    }
    case Family::BoxIncidence: {
        const auto dim = static_cast<std::size_t>(spec.dim);
        Rng xr = make_rng(spec.seed, {fam, x_stream});
        Rng yr = make_rng(spec.seed, {fam, y_stream});
        std::vector<double> lo(n_x * dim), hi(n_x * dim), pts(n_y * dim);
        for (std::size_t k = 0; k < n_x * dim; ++k) {
            const double u = uniform_unit(xr);
            const double v = uniform_unit(xr);
            lo[k] = std::min(u, v);
            hi[k] = std::max(u, v);
        }
        for (auto& c : pts)
            c = uniform_unit(yr);
        return from_predicate(n_x, n_y, [&](std::size_t x, std::size_t y) {
            for (std::size_t t = 0; t < dim; ++t) {
                const double c = pts[y * dim + t];
                if (c < lo[x * dim + t] || c > hi[x * dim + t])
                    return false;
            }
            return true;
        });
    }
    case Family::Threshold: {
        Rng xr = make_rng(spec.seed, {fam, x_stream});
        Rng yr = make_rng(spec.seed, {fam, y_stream});
        std::vector<double> a(n_x), b(n_y);
        for (auto& v : a)
            v = uniform_unit(xr);
        for (auto& v : b)
            v = uniform_unit(yr);
        return from_predicate(n_x, n_y, [&](std::size_t x, std::size_t y) { return a[x] <= b[y]; });
    }
    case Family::BlockDiagonal: {
        const auto hx = n_x / 2;
        const auto hy = n_y / 2;
        return from_predicate(n_x, n_y, [&](std::size_t x, std::size_t y) { return (x < hx) == (y < hy); });
    }
    case Family::Matching:
        return from_predicate(n_x, n_y, [](std::size_t x, std::size_t y) { return x == y; });
    case Family::Complete:
        return from_predicate(n_x, n_y, [](std::size_t, std::size_t) { return true; });
    case Family::ErdosRenyi: {
        Rng rng = make_rng(spec.seed, {fam});
        return from_predicate(n_x, n_y, [&](std::size_t, std::size_t) { return uniform_unit(rng) < spec.p; });
    }
    case Family::Powerset:
        return from_predicate(n_x, n_y, [](std::size_t x, std::size_t y) { return ((x >> y) & 1U) != 0; });
    }
    throw SpecError("unhandled family");
}

} // namespace vcreg
