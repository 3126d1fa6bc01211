#include "vcreg/regularity.hpp"

#include "vcreg/errors.hpp"
#include "vcreg/parallel.hpp"
#include "vcreg/random.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace vcreg {

const char* verdict_name(PairVerdict v)
{
    switch (v) {
    case PairVerdict::RegularCertified:
        return "regular-certified";
    case PairVerdict::IrregularWitnessed:
        return "irregular-with-witness";
    case PairVerdict::RegularProbable:
        return "regular-probable";
    }
    return "unknown";
}

std::size_t RegularityReport::count(PairVerdict v) const
{
    return static_cast<std::size_t>(std::count(verdicts.begin(), verdicts.end(), v));
}

namespace {

using i128 = __int128;

/// Nonnegative fraction num/den with den > 0, compared by cross products.
struct Fraction {
    i128 num = 0;
    i128 den = 1;

    friend bool operator<(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }
};

Rational to_rational(const Fraction& f)
{
    auto to_integer = [](i128 v) {
        const bool negative = v < 0;
        auto u = static_cast<unsigned __int128>(negative ? -v : v);
        Integer hi{static_cast<unsigned long>(u >> 64)};
        Integer lo{static_cast<unsigned long>(u & ~std::uint64_t{0})};
        Integer out = (hi << 64) + lo;
        return negative ? Integer(-out) : out;
    };
    return make_rational(to_integer(f.num), to_integer(f.den));
}

/// Smallest k with k >= eps * n, at least 1.
std::size_t min_subset_size(const Rational& eps, std::size_t n)
{
    Rational scaled = eps * Rational(Integer{static_cast<unsigned long>(n)});
    Integer t;
    mpz_cdiv_q(t.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    if (t < 1)
        return 1;
    if (t > static_cast<unsigned long>(n))
        return n + 1;
    return static_cast<std::size_t>(t.get_ui());
}

void check_eps(const Rational& eps)
{
    if (eps <= 0 || eps > 1)
        throw InvalidArgument("epsilon must lie in (0, 1]");
}

void check_blocks(const BipartiteRelation& g, const VertexSubset& bx, const VertexSubset& by)
{
    if (bx.side() != Side::X || by.side() != Side::Y)
        throw InvalidArgument("block pair must be (X-side, Y-side)");
    if (bx.ground_size() != g.n_x() || by.ground_size() != g.n_y())
        throw GroundMismatchError("block ground size does not match the relation");
    if (bx.empty() || by.empty())
        throw EmptySideError("regularity test on an empty block");
}

/// |top * a * b - e * m * k| / (a * b * m * k): the defect of a sub-pair with
/// `top` edges on an m x k grid inside an a x b block holding e edges.
Fraction defect_of(std::uint64_t sub_edges, std::uint64_t m, std::uint64_t k, std::uint64_t a, std::uint64_t b,
                   std::uint64_t e)
{
    const i128 lhs = static_cast<i128>(sub_edges) * a * b;
    const i128 rhs = static_cast<i128>(e) * m * k;
    return {lhs > rhs ? lhs - rhs : rhs - lhs, static_cast<i128>(a) * b * m * k};
}

/// Best sub-pair found so far, in local coordinates.
struct Candidate {
    Fraction defect;
    Bits wx;
    Bits wy;
    bool valid = false;
};

/// Given a fixed subset `fixed` of one block (as a bitset over that side),
/// choose the subset of `free_block` (sizes >= min_k) maximizing the defect.
/// Vertices are ranked by degree into `fixed` with index tie-breaks.
struct SideChoice {
    Fraction defect;
    Bits chosen;
};

SideChoice best_response(const BipartiteRelation& g, Side free_side, const std::vector<Vertex>& free_block,
                         const Bits& fixed, std::size_t min_k, std::uint64_t a, std::uint64_t b, std::uint64_t e)
{
    const std::uint64_t m = fixed.count();
    const std::size_t t = free_block.size();
    std::vector<std::pair<std::uint64_t, Vertex>> ranked;
    ranked.reserve(t);
    for (auto v : free_block)
        ranked.emplace_back(intersection_count(g.neighborhood(free_side, v), fixed), v);
    std::sort(ranked.begin(), ranked.end(), [](const auto& l, const auto& r) {
        return l.first != r.first ? l.first > r.first : l.second < r.second;
    });
    std::vector<std::uint64_t> prefix(t + 1, 0);
    for (std::size_t k = 0; k < t; ++k)
        prefix[k + 1] = prefix[k] + ranked[k].first;

    SideChoice best{{-1, 1}, Bits(g.side_size(free_side))};
    std::size_t best_k = 0;
    bool best_top = true;
    for (std::size_t k = min_k; k <= t; ++k) {
        const auto top = defect_of(prefix[k], m, k, a, b, e);
        const auto bottom = defect_of(prefix[t] - prefix[t - k], m, k, a, b, e);
        if (best.defect < top) {
            best.defect = top;
            best_k = k;
            best_top = true;
        }
        if (best.defect < bottom) {
            best.defect = bottom;
            best_k = k;
            best_top = false;
        }
    }
    for (std::size_t q = 0; q < best_k; ++q)
        best.chosen.set(best_top ? ranked[q].second : ranked[t - 1 - q].second);
    return best;
}

} // namespace

Rational regularity_defect(const BipartiteRelation& g, const VertexSubset& bx, const VertexSubset& by,
                           const VertexSubset& wx, const VertexSubset& wy)
{
    const Rational diff = density(g, bx, by) - density(g, wx, wy);
    return abs(diff);
}

bool witness_is_valid(const BipartiteRelation& g, const VertexSubset& bx, const VertexSubset& by,
                      const IrregularityWitness& w, const Rational& eps)
{
    if (w.wx.side() != Side::X || w.wy.side() != Side::Y || w.wx.empty() || w.wy.empty())
        return false;
    if (!w.wx.members().is_subset_of(bx.members()) || !w.wy.members().is_subset_of(by.members()))
        return false;
    const Rational ux(Integer{static_cast<unsigned long>(w.wx.size())});
    const Rational uy(Integer{static_cast<unsigned long>(w.wy.size())});
    if (ux < eps * static_cast<unsigned long>(bx.size()) || uy < eps * static_cast<unsigned long>(by.size()))
        return false;
    const auto defect = regularity_defect(g, bx, by, w.wx, w.wy);
    return defect == w.defect && defect >= eps;
}

std::optional<IrregularityWitness> pair_regular_exact(const BipartiteRelation& g, const VertexSubset& bx,
                                                      const VertexSubset& by, const Rational& eps,
                                                      std::size_t size_cap)
{
    check_blocks(g, bx, by);
    check_eps(eps);
    const std::uint64_t a = bx.size();
    const std::uint64_t b = by.size();
    const std::size_t enumerated = std::min(a, b);
    if (enumerated > size_cap || enumerated > 30)
        throw TooLargeForExact("exact regularity test limited to blocks with min side <= " +
                               std::to_string(std::min<std::size_t>(size_cap, 30)) + ", got " +
                               std::to_string(enumerated));
    const std::uint64_t e = edge_count(g, bx, by);

    // Enumerate the smaller side S; T is the other block.
    const Side s_side = a <= b ? Side::X : Side::Y;
    const Side t_side = opposite(s_side);
    const auto s_vertices = (s_side == Side::X ? bx : by).indices();
    const auto t_vertices = (t_side == Side::X ? bx : by).indices();
    const std::size_t s = s_vertices.size();
    const std::size_t t = t_vertices.size();
    const std::size_t min_s = min_subset_size(eps, s);
    const std::size_t min_t = min_subset_size(eps, t);

    // Neighbors of each T vertex inside S, as a local bitmask.
    std::vector<std::uint32_t> nbr(t, 0);
    for (std::size_t q = 0; q < t; ++q)
        for (std::size_t p = 0; p < s; ++p)
            if (g.neighborhood(t_side, t_vertices[q]).test(s_vertices[p]))
                nbr[q] |= std::uint32_t{1} << p;

    Fraction best{-1, 1};
    std::uint32_t best_mask = 0;
    std::size_t best_k = 0;
    bool best_top = true;

    std::vector<std::size_t> hist(s + 1);
    std::vector<std::uint64_t> top_prefix(t + 1);
    const std::uint32_t limit = (std::uint32_t{1} << s) - 1;
    for (std::uint32_t mask = 1; mask <= limit; ++mask) {
        const auto m = static_cast<std::size_t>(std::popcount(mask));
        if (m < min_s)
            continue;
        std::fill(hist.begin(), hist.begin() + static_cast<std::ptrdiff_t>(m + 1), 0);
        for (std::size_t q = 0; q < t; ++q)
            ++hist[static_cast<std::size_t>(std::popcount(nbr[q] & mask))];
        // Prefix sums of degrees in decreasing order, via the histogram.
        std::size_t k = 0;
        for (std::size_t c = m + 1; c-- > 0;)
            for (std::size_t n = hist[c]; n > 0; --n, ++k)
                top_prefix[k + 1] = top_prefix[k] + c;
        const auto total = top_prefix[t];
        for (std::size_t kk = min_t; kk <= t; ++kk) {
            const auto top = defect_of(top_prefix[kk], m, kk, a, b, e);
            const auto bottom = defect_of(total - top_prefix[t - kk], m, kk, a, b, e);
            if (best < top) {
                best = top;
                best_mask = mask;
                best_k = kk;
                best_top = true;
            }
            if (best < bottom) {
                best = bottom;
                best_mask = mask;
                best_k = kk;
                best_top = false;
            }
        }
    }

    if (best.num < 0 || to_rational(best) < eps)
        return std::nullopt;

    // Rebuild the extremal sub-pair.
    Bits s_members(g.side_size(s_side));
    for (std::size_t p = 0; p < s; ++p)
        if (best_mask & (std::uint32_t{1} << p))
            s_members.set(s_vertices[p]);
    std::vector<std::pair<int, std::size_t>> ranked;
    for (std::size_t q = 0; q < t; ++q)
        ranked.emplace_back(std::popcount(nbr[q] & best_mask), q);
    std::sort(ranked.begin(), ranked.end(), [&](const auto& l, const auto& r) {
        return best_top ? (l.first != r.first ? l.first > r.first : l.second < r.second)
                        : (l.first != r.first ? l.first < r.first : l.second < r.second);
    });
    Bits t_members(g.side_size(t_side));
    for (std::size_t q = 0; q < best_k; ++q)
        t_members.set(t_vertices[ranked[q].second]);

    IrregularityWitness w{0, 0, VertexSubset(Side::X, s_side == Side::X ? s_members : t_members),
                          VertexSubset(Side::Y, s_side == Side::Y ? s_members : t_members), to_rational(best)};
    return w;
}

std::optional<IrregularityWitness> find_witness_sampled(const BipartiteRelation& g, const VertexSubset& bx,
                                                        const VertexSubset& by, const Rational& eps,
                                                        std::size_t trials, std::uint64_t seed)
{
    check_blocks(g, bx, by);
    check_eps(eps);
    if (trials == 0)
        throw InvalidArgument("sampled tester needs at least one trial");
    const std::uint64_t a = bx.size();
    const std::uint64_t b = by.size();
    const std::uint64_t e = edge_count(g, bx, by);
    if (e == 0 || e == a * b)
        return std::nullopt;
    const auto xs = bx.indices();
    const auto ys = by.indices();
    const std::size_t min_x = min_subset_size(eps, a);
    const std::size_t min_y = min_subset_size(eps, b);

    Candidate best;
    best.defect = {-1, 1};

    // Alternating best responses from a starting subset on one side.
    auto climb = [&](Bits start, Side start_side) {
        Bits wx, wy;
        Fraction current{-1, 1};
        if (start_side == Side::X) {
            wx = std::move(start);
            auto r = best_response(g, Side::Y, ys, wx, min_y, a, b, e);
            wy = std::move(r.chosen);
            current = r.defect;
        } else {
            wy = std::move(start);
            auto r = best_response(g, Side::X, xs, wy, min_x, a, b, e);
            wx = std::move(r.chosen);
            current = r.defect;
        }
        for (int step = 0; step < 8; ++step) {
            auto rx = best_response(g, Side::X, xs, wy, min_x, a, b, e);
            if (!(current < rx.defect))
                break;
            wx = std::move(rx.chosen);
            current = rx.defect;
            auto ry = best_response(g, Side::Y, ys, wx, min_y, a, b, e);
            if (!(current < ry.defect))
                break;
            wy = std::move(ry.chosen);
            current = ry.defect;
        }
        if (!best.valid || best.defect < current) {
            best.defect = current;
            best.wx = std::move(wx);
            best.wy = std::move(wy);
            best.valid = true;
        }
    };

    // Deviation-guided starts: vertices whose degree into the other block
    // deviates from the block density by at least eps/2, one set per sign,
    // padded with the next most deviating vertices up to the minimum size.
    const bool eps_fits = mpz_fits_slong_p(eps.get_num_mpz_t()) && mpz_fits_slong_p(eps.get_den_mpz_t());
    const i128 eps_num = eps_fits ? mpz_get_si(eps.get_num_mpz_t()) : 1;
    const i128 eps_den = eps_fits ? mpz_get_si(eps.get_den_mpz_t()) : 1;
    auto deviation_start = [&](Side side, bool high) {
        const auto& block = side == Side::X ? xs : ys;
        const auto& other = side == Side::X ? by : bx;
        const std::uint64_t own = side == Side::X ? a : b;
        const std::size_t min_k = side == Side::X ? min_x : min_y;
        std::vector<std::pair<i128, Vertex>> dev;
        dev.reserve(block.size());
        for (auto v : block) {
            // deg/width - e/(a b), scaled by a b.
            const i128 deg = static_cast<i128>(intersection_count(g.neighborhood(side, v), other.members()));
            const i128 d = deg * own - static_cast<i128>(e);
            dev.emplace_back(high ? d : -d, v);
        }
        std::sort(dev.begin(), dev.end(),
                  [](const auto& l, const auto& r) { return l.first != r.first ? l.first > r.first : l.second < r.second; });
        Bits start(g.side_size(side));
        const i128 scale = static_cast<i128>(a) * b;
        for (std::size_t k = 0; k < dev.size(); ++k) {
            const bool strong = 2 * eps_den * dev[k].first >= eps_num * scale;
            if (k >= min_k && !strong)
                break;
            start.set(dev[k].second);
        }
        return start;
    };
    for (Side side : {Side::X, Side::Y})
        for (bool high : {true, false})
            climb(deviation_start(side, high), side);

    Rng rng = make_rng(seed, {0x72656775 /* "regu" */});
    std::vector<Vertex> pool = xs;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const auto size = min_x + static_cast<std::size_t>(uniform_below(rng, a - min_x + 1));
        shuffle(std::span<Vertex>(pool), rng);
        Bits start(g.n_x());
        for (std::size_t k = 0; k < size; ++k)
            start.set(pool[k]);
        climb(std::move(start), Side::X);
    }

    if (!best.valid)
        return std::nullopt;
    IrregularityWitness w{0, 0, VertexSubset(Side::X, std::move(best.wx)), VertexSubset(Side::Y, std::move(best.wy)),
                          Rational(0)};
    w.defect = regularity_defect(g, bx, by, w.wx, w.wy);
    if (w.defect < eps)
        return std::nullopt;
    return w;
}

RegularityReport partition_regularity(const BipartiteRelation& g, const Partition& p, const Rational& eps,
                                      const TesterConfig& cfg)
{
    check_eps(eps);
    const auto counts = block_edge_counts(g, p);
    const auto n = p.block_count(Side::X);
    const auto m = p.block_count(Side::Y);

    RegularityReport report;
    report.epsilon = eps;
    report.x_blocks = n;
    report.y_blocks = m;
    report.config = cfg;
    report.verdicts.assign(n * m, PairVerdict::RegularCertified);

    // Homogeneous pairs (density 0 or 1) are regular outright.
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const std::uint64_t full = static_cast<std::uint64_t>(p.x_blocks()[i].size()) * p.y_blocks()[j].size();
            const auto e = counts[i * m + j];
            if (e != 0 && e != full)
                open.push_back(i * m + j);
        }

    std::vector<std::optional<IrregularityWitness>> found(open.size());
    std::vector<PairVerdict> verdicts(open.size(), PairVerdict::RegularCertified);
    parallel_for(open.size(), [&](std::size_t k) {
        const auto i = open[k] / m;
        const auto j = open[k] % m;
        const auto& bx = p.x_blocks()[i];
        const auto& by = p.y_blocks()[j];
        const auto smaller = std::min(bx.size(), by.size());
        if (smaller <= cfg.exact_cap && smaller <= 30) {
            found[k] = pair_regular_exact(g, bx, by, eps, cfg.exact_cap);
            verdicts[k] = found[k] ? PairVerdict::IrregularWitnessed : PairVerdict::RegularCertified;
            return;
        }
        if (cfg.exact_only)
            throw TooLargeForExact("block pair (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") exceeds the exact cap");
        found[k] = find_witness_sampled(g, bx, by, eps, cfg.trials, derive_seed(cfg.seed, {i, j}));
        verdicts[k] = found[k] ? PairVerdict::IrregularWitnessed : PairVerdict::RegularProbable;
    });

    Integer irregular = 0;
    Integer uncertain = 0;
    for (std::size_t k = 0; k < open.size(); ++k) {
        const auto i = open[k] / m;
        const auto j = open[k] % m;
        report.verdicts[open[k]] = verdicts[k];
        const Integer weight =
            Integer{static_cast<unsigned long>(p.x_blocks()[i].size())} * static_cast<unsigned long>(p.y_blocks()[j].size());
        if (verdicts[k] == PairVerdict::IrregularWitnessed) {
            irregular += weight;
            found[k]->i = i;
            found[k]->j = j;
            report.witnesses.push_back(std::move(*found[k]));
        } else if (verdicts[k] == PairVerdict::RegularProbable) {
            uncertain += weight;
        }
    }
    const Integer total = Integer{static_cast<unsigned long>(g.n_x())} * static_cast<unsigned long>(g.n_y());
    report.irregular_mass = make_rational(irregular, total);
    report.uncertain_mass = make_rational(uncertain, total);
    return report;
}

namespace {

/// Edge count of E, or of its complement inside the block when `flip`.
std::uint64_t oriented_count(std::uint64_t edges, std::uint64_t cells, bool flip)
{
    return flip ? cells - edges : edges;
}

VertexSubset union_of_meeting_blocks(const std::vector<VertexSubset>& blocks, const Bits& seeds, Side side)
{
    Bits out(seeds.size());
    for (const auto& block : blocks)
        if (block.members().intersects(seeds))
            out |= block.members();
    return VertexSubset(side, std::move(out));
}

} // namespace

BoostResult witness_boost(const BipartiteRelation& g, const VertexSubset& bx, const VertexSubset& by,
                          const IrregularityWitness& w, std::int64_t r, const Partition& fine)
{
    check_blocks(g, bx, by);
    if (r < 2)
        throw InvalidArgument("witness_boost needs r >= 2");
    if (!w.wx.members().is_subset_of(bx.members()) || !w.wy.members().is_subset_of(by.members()) || w.wx.empty() ||
        w.wy.empty())
        throw InvalidArgument("witness does not lie inside the block pair");

    const Rational inv_r = make_rational(1, r);
    const Rational base = density(g, bx, by);
    const Rational sub = density(g, w.wx, w.wy);
    bool flip;
    if (sub >= base + inv_r)
        flip = false;
    else if (sub <= base - inv_r)
        flip = true;
    else
        throw InvalidArgument("witness density is not 1/r away from the block density");

    const Rational oriented_base = flip ? Rational(1 - base) : base;
    const auto wy_size = w.wy.size();

    // X~': rows whose density into wy clears D + 1/2r.
    const Rational x_threshold = oriented_base + make_rational(1, 2 * r);
    Bits x_seed(g.n_x());
    bx.members().for_each([&](std::size_t x) {
        const auto c = oriented_count(intersection_count(g.row(static_cast<Vertex>(x)), w.wy.members()), wy_size, flip);
        if (make_rational(static_cast<std::int64_t>(c), static_cast<std::int64_t>(wy_size)) >= x_threshold)
            x_seed.set(x);
    });
    if (x_seed.none())
        throw DegenerateWitness("no row of the block clears d + 1/2r against the witness");
    const auto x_tilde = union_of_meeting_blocks(restrict_blocks(fine, bx), x_seed, Side::X);

    // Y~': columns whose density into X~ clears D + 1/5r.
    const Rational y_threshold = oriented_base + make_rational(1, 5 * r);
    const auto xt_size = x_tilde.size();
    Bits y_seed(g.n_y());
    by.members().for_each([&](std::size_t y) {
        const auto c =
            oriented_count(intersection_count(g.col(static_cast<Vertex>(y)), x_tilde.members()), xt_size, flip);
        if (make_rational(static_cast<std::int64_t>(c), static_cast<std::int64_t>(xt_size)) >= y_threshold)
            y_seed.set(y);
    });
    if (y_seed.none())
        throw DegenerateWitness("no column of the block clears d + 1/5r against X~");
    auto y_tilde = union_of_meeting_blocks(restrict_blocks(fine, by), y_seed, Side::Y);

    BoostResult out{x_tilde, std::move(y_tilde), {}};
    out.stats.mu_x = make_rational(static_cast<std::int64_t>(out.x_tilde.size()), static_cast<std::int64_t>(bx.size()));
    out.stats.mu_y = make_rational(static_cast<std::int64_t>(out.y_tilde.size()), static_cast<std::int64_t>(by.size()));
    const Rational raw = density(g, out.x_tilde, out.y_tilde);
    out.stats.density = flip ? Rational(1 - raw) : raw;
    out.stats.base_density = oriented_base;
    out.stats.complemented = flip;
    return out;
}

Rational two_block_energy_gain(const BipartiteRelation& g, const VertexSubset& bx, const VertexSubset& by,
                               const VertexSubset& x_tilde, const VertexSubset& y_tilde)
{
    check_blocks(g, bx, by);
    if (!x_tilde.members().is_subset_of(bx.members()) || !y_tilde.members().is_subset_of(by.members()))
        throw InvalidArgument("split sets must lie inside the block pair");
    Bits x_rest = bx.members();
    x_rest.subtract(x_tilde.members());
    Bits y_rest = by.members();
    y_rest.subtract(y_tilde.members());
    const std::vector<VertexSubset> cells_x{x_tilde, VertexSubset(Side::X, std::move(x_rest))};
    const std::vector<VertexSubset> cells_y{y_tilde, VertexSubset(Side::Y, std::move(y_rest))};
    const Rational d = density(g, bx, by);
    return local_energy(g, bx, by, cells_x, cells_y) - d * d;
}

} // namespace vcreg
