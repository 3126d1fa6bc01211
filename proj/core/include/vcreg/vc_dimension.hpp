#pragma once

#include "vcreg/bigraph.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace vcreg {

/// Which neighborhood family of a relation is being traced.
enum class FamilyKind : std::uint8_t {
    Rows,        ///< {E_x : x in X}, ground set Y
    Columns,     ///< {E^y : y in Y}, ground set X
    Differences, ///< {E_x \ E_x' : (x, x') in X x X}, ground set Y
};

/**
 * A set family derived from a relation. Holds a non-owning reference; the
 * relation must outlive the family. Members of the difference family are
 * produced on demand, never stored as an n_x^2 x n_y matrix.
 */
class TraceFamily {
public:
    TraceFamily(const BipartiteRelation& g, FamilyKind kind) : base_(&g), kind_(kind) {}

    static TraceFamily rows(const BipartiteRelation& g) { return {g, FamilyKind::Rows}; }
    static TraceFamily columns(const BipartiteRelation& g) { return {g, FamilyKind::Columns}; }

    const BipartiteRelation& base() const { return *base_; }
    FamilyKind kind() const { return kind_; }
    /// Side the member sets live on.
    Side ground_side() const { return kind_ == FamilyKind::Columns ? Side::X : Side::Y; }
    std::size_t ground_size() const { return base_->side_size(ground_side()); }
    std::size_t member_count() const;

    /// Member k. For the difference family k encodes the ordered pair
    /// (k / n_x, k % n_x).
    Bits member(std::size_t k) const;
    std::pair<Vertex, Vertex> difference_pair(std::size_t k) const;

    template <class Fn>
    void for_each_member(Fn&& fn) const
    {
        const auto n = member_count();
        if (kind_ == FamilyKind::Differences) {
            Bits scratch;
            for (std::size_t k = 0; k < n; ++k) {
                const auto [a, b] = difference_pair(k);
                scratch = base_->row(a);
                scratch.subtract(base_->row(b));
                fn(k, static_cast<const Bits&>(scratch));
            }
        } else {
            for (std::size_t k = 0; k < n; ++k)
                fn(k, base_->neighborhood(kind_ == FamilyKind::Rows ? Side::X : Side::Y, static_cast<Vertex>(k)));
        }
    }

    /// The distinct traces {F intersect I}, each encoded as a bitmask whose bit t
    /// stands for the t-th smallest element of I; sorted ascending. |I| <= 63.
    std::vector<std::uint64_t> distinct_traces(const VertexSubset& I) const;

private:
    const BipartiteRelation* base_;
    FamilyKind kind_;
};

/// Largest |I| accepted by shatters().
inline constexpr std::size_t shatter_guard = 30;

/// True iff every J subset of I is a trace. Throws TooLargeToShatterCheck when
/// |I| > shatter_guard and InvalidArgument when I is on the wrong side.
bool shatters(const TraceFamily& f, const VertexSubset& I);

/// Outcome of a capped VC search. When exceeds_cap is set the true value is
/// strictly larger than `value` (== cap).
struct VcResult {
    int value = 0;
    bool exceeds_cap = false;

    friend bool operator==(const VcResult&, const VcResult&) = default;
};

/// Exact VC dimension of the family, searching sets of size <= cap + 1.
VcResult vc_dimension(const TraceFamily& f, int cap);

/// Max of the row-family and column-family VC dimensions.
VcResult vc_dimension_of_relation(const BipartiteRelation& g, int cap);

/// VC dimension of E intersect (X' x Y') without materializing the restriction.
VcResult vc_dimension_of_restriction(const BipartiteRelation& g, const VertexSubset& sx, const VertexSubset& sy,
                                     int cap);

struct VcReport {
    VcResult primal;
    VcResult dual;
    VcResult symmetric;
};

VcReport vc_report(const BipartiteRelation& g, int cap);

/// (e * set_size / d)^d. Throws DomainError unless 1 <= d <= set_size.
double sauer_shelah_bound(int d, std::size_t set_size);

/// The family {E_x \ E_x'} over Y.
TraceFamily difference_family(const BipartiteRelation& g);

} // namespace vcreg
