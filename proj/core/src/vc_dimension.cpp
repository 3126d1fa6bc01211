#include "vcreg/vc_dimension.hpp"

#include "vcreg/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_set>

namespace vcreg {

std::size_t TraceFamily::member_count() const
{
    switch (kind_) {
    case FamilyKind::Rows:
        return base_->n_x();
    case FamilyKind::Columns:
        return base_->n_y();
    case FamilyKind::Differences:
        return base_->n_x() * base_->n_x();
    }
    return 0;
}

std::pair<Vertex, Vertex> TraceFamily::difference_pair(std::size_t k) const
{
    const auto n = base_->n_x();
    return {static_cast<Vertex>(k / n), static_cast<Vertex>(k % n)};
}

Bits TraceFamily::member(std::size_t k) const
{
    switch (kind_) {
    case FamilyKind::Rows:
        return base_->row(static_cast<Vertex>(k));
    case FamilyKind::Columns:
        return base_->col(static_cast<Vertex>(k));
    case FamilyKind::Differences: {
        const auto [a, b] = difference_pair(k);
        Bits out = base_->row(a);
        out.subtract(base_->row(b));
        return out;
    }
    }
    return {};
}

namespace {

void check_ground(const TraceFamily& f, const VertexSubset& I)
{
    if (I.side() != f.ground_side())
        throw InvalidArgument("test set lies on the wrong side for this family");
    if (I.ground_size() != f.ground_size())
        throw GroundMismatchError("test set ground size does not match the family");
}

std::uint64_t project(const Bits& set, std::span<const Vertex> elements)
{
    std::uint64_t code = 0;
    for (std::size_t t = 0; t < elements.size(); ++t)
        if (set.test(elements[t]))
            code |= std::uint64_t{1} << t;
    return code;
}

void sort_unique(std::vector<std::uint64_t>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

/// A deduplicated set system over a compacted ground [0, ground). Constant
/// and duplicate ground elements are removed; neither can belong to a
/// shattered set of size >= 1 (resp. >= 2 together), so VC is unchanged.
class CompactSystem {
public:
    explicit CompactSystem(std::vector<Bits> members);

    std::size_t ground() const { return ground_; }
    std::size_t member_count() const { return small_ ? small_members_.size() : members_.size(); }
    bool shatters(std::span<const std::uint32_t> set) const;

private:
    std::size_t ground_ = 0;
    bool small_ = false;
    std::vector<std::uint64_t> small_members_;
    std::vector<Bits> members_;
};

CompactSystem::CompactSystem(std::vector<Bits> raw)
{
    std::unordered_set<Bits, BitsHash> seen;
    std::vector<Bits> distinct;
    for (auto& m : raw)
        if (seen.insert(m).second)
            distinct.push_back(std::move(m));

    const std::size_t full_ground = distinct.empty() ? 0 : distinct.front().size();
    std::vector<std::size_t> keep;
    std::unordered_set<Bits, BitsHash> columns;
    for (std::size_t e = 0; e < full_ground; ++e) {
        Bits column(distinct.size());
        for (std::size_t m = 0; m < distinct.size(); ++m)
            if (distinct[m].test(e))
                column.set(m);
        const auto c = column.count();
        if (c == 0 || c == distinct.size())
            continue;
        if (columns.insert(std::move(column)).second)
            keep.push_back(e);
    }

    ground_ = keep.size();
    small_ = ground_ <= 64;
    if (small_) {
        std::vector<std::uint64_t> codes;
        codes.reserve(distinct.size());
        for (const auto& m : distinct) {
            std::uint64_t code = 0;
            for (std::size_t t = 0; t < keep.size(); ++t)
                if (m.test(keep[t]))
                    code |= std::uint64_t{1} << t;
            codes.push_back(code);
        }
        sort_unique(codes);
        small_members_ = std::move(codes);
    } else {
        for (const auto& m : distinct) {
            Bits reduced(ground_);
            for (std::size_t t = 0; t < keep.size(); ++t)
                if (m.test(keep[t]))
                    reduced.set(t);
            members_.push_back(std::move(reduced));
        }
    }
}

bool CompactSystem::shatters(std::span<const std::uint32_t> set) const
{
    const std::size_t k = set.size();
    if (k >= 63 || member_count() < (std::size_t{1} << k))
        return false;
    const std::size_t target = std::size_t{1} << k;

    std::vector<std::uint64_t> codes;
    codes.reserve(member_count());
    if (small_) {
        for (auto m : small_members_) {
            std::uint64_t code = 0;
            for (std::size_t t = 0; t < k; ++t)
                code |= ((m >> set[t]) & 1U) << t;
            codes.push_back(code);
        }
    } else {
        for (const auto& m : members_) {
            std::uint64_t code = 0;
            for (std::size_t t = 0; t < k; ++t)
                if (m.test(set[t]))
                    code |= std::uint64_t{1} << t;
            codes.push_back(code);
        }
    }
    sort_unique(codes);
    return codes.size() == target;
}

/// Level-wise search: increasing size, lexicographic within a size, and a
/// candidate is tested only if all of its maximal proper subsets were
/// shattered (shattering is closed downward).
VcResult level_search(const CompactSystem& sys, int cap)
{
    using Set = std::vector<std::uint32_t>;
    std::vector<Set> level{Set{}};
    const auto members = sys.member_count();

    for (int k = 1;; ++k) {
        if (k >= 63 || (std::size_t{1} << k) > members)
            return {k - 1, false};

        std::vector<Set> next;
        for (const auto& base : level) {
            const std::uint32_t start = base.empty() ? 0 : base.back() + 1;
            for (std::uint32_t e = start; e < sys.ground(); ++e) {
                Set candidate = base;
                candidate.push_back(e);
                bool closed = true;
                for (std::size_t drop = 0; drop + 1 < candidate.size() && closed; ++drop) {
                    Set sub;
                    sub.reserve(candidate.size() - 1);
                    for (std::size_t t = 0; t < candidate.size(); ++t)
                        if (t != drop)
                            sub.push_back(candidate[t]);
                    closed = std::binary_search(level.begin(), level.end(), sub);
                }
                if (closed && sys.shatters(candidate))
                    next.push_back(std::move(candidate));
            }
        }
        if (next.empty())
            return {k - 1, false};
        if (k == cap + 1)
            return {cap, true};
        level = std::move(next);
    }
}

std::vector<Bits> family_members(const TraceFamily& f)
{
    if (f.kind() != FamilyKind::Differences) {
        std::vector<Bits> out;
        out.reserve(f.member_count());
        f.for_each_member([&](std::size_t, const Bits& m) { out.push_back(m); });
        return out;
    }
    // E_x \ E_x' only depends on the pair of distinct rows involved.
    const auto& g = f.base();
    std::unordered_set<Bits, BitsHash> seen;
    std::vector<Bits> rows;
    for (std::size_t x = 0; x < g.n_x(); ++x)
        if (seen.insert(g.row(static_cast<Vertex>(x))).second)
            rows.push_back(g.row(static_cast<Vertex>(x)));
    std::vector<Bits> out;
    out.reserve(rows.size() * rows.size());
    for (const auto& a : rows)
        for (const auto& b : rows) {
            Bits d = a;
            d.subtract(b);
            out.push_back(std::move(d));
        }
    return out;
}

VcResult max_result(const VcResult& a, const VcResult& b)
{
    if (a.exceeds_cap)
        return a;
    if (b.exceeds_cap)
        return b;
    return a.value >= b.value ? a : b;
}

} // namespace

std::vector<std::uint64_t> TraceFamily::distinct_traces(const VertexSubset& I) const
{
    check_ground(*this, I);
    const auto elements = I.indices();
    if (elements.size() > 63)
        throw TooLargeToShatterCheck("trace encoding supports at most 63 elements");

    std::vector<std::uint64_t> codes;
    if (kind_ == FamilyKind::Differences) {
        std::vector<std::uint64_t> rows;
        rows.reserve(base_->n_x());
        for (std::size_t x = 0; x < base_->n_x(); ++x)
            rows.push_back(project(base_->row(static_cast<Vertex>(x)), elements));
        sort_unique(rows);
        for (auto a : rows)
            for (auto b : rows)
                codes.push_back(a & ~b);
    } else {
        for_each_member([&](std::size_t, const Bits& m) { codes.push_back(project(m, elements)); });
    }
    sort_unique(codes);
    return codes;
}

bool shatters(const TraceFamily& f, const VertexSubset& I)
{
    check_ground(f, I);
    const auto k = I.size();
    if (k > shatter_guard)
        throw TooLargeToShatterCheck("shattering check limited to " + std::to_string(shatter_guard) +
                                     " elements, got " + std::to_string(k));
    return f.distinct_traces(I).size() == (std::size_t{1} << k);
}

VcResult vc_dimension(const TraceFamily& f, int cap)
{
    if (cap < 0)
        throw InvalidArgument("VC cap must be non-negative");
    return level_search(CompactSystem(family_members(f)), cap);
}

VcResult vc_dimension_of_relation(const BipartiteRelation& g, int cap)
{
    return max_result(vc_dimension(TraceFamily::rows(g), cap), vc_dimension(TraceFamily::columns(g), cap));
}

VcResult vc_dimension_of_restriction(const BipartiteRelation& g, const VertexSubset& sx, const VertexSubset& sy,
                                     int cap)
{
    if (cap < 0)
        throw InvalidArgument("VC cap must be non-negative");
    if (sx.side() != Side::X || sy.side() != Side::Y || sx.ground_size() != g.n_x() || sy.ground_size() != g.n_y())
        throw GroundMismatchError("restriction subsets do not match the relation");
    if (sx.empty() || sy.empty())
        throw EmptySideError("restriction to an empty side");

    std::vector<Bits> rows;
    sx.members().for_each([&](std::size_t x) { rows.push_back(g.row(static_cast<Vertex>(x)) & sy.members()); });
    std::vector<Bits> cols;
    sy.members().for_each([&](std::size_t y) { cols.push_back(g.col(static_cast<Vertex>(y)) & sx.members()); });
    // Elements outside the restriction are constant-zero columns and drop out.
    return max_result(level_search(CompactSystem(std::move(rows)), cap),
                      level_search(CompactSystem(std::move(cols)), cap));
}

VcReport vc_report(const BipartiteRelation& g, int cap)
{
    VcReport r;
    r.primal = vc_dimension(TraceFamily::rows(g), cap);
    r.dual = vc_dimension(TraceFamily::columns(g), cap);
    r.symmetric = max_result(r.primal, r.dual);
    return r;
}

double sauer_shelah_bound(int d, std::size_t set_size)
{
    if (d < 1)
        throw DomainError("Sauer-Shelah bound needs d >= 1");
    if (set_size < static_cast<std::size_t>(d))
        throw DomainError("Sauer-Shelah bound needs |I| >= d");
    return std::pow(std::numbers::e * static_cast<double>(set_size) / d, d);
}

TraceFamily difference_family(const BipartiteRelation& g)
{
    return TraceFamily(g, FamilyKind::Differences);
}

} // namespace vcreg
