#include "vcreg/errors.hpp"
#include "vcreg/generators.hpp"
#include "vcreg/vc_dimension.hpp"

#include <doctest.h>

using namespace vcreg;

TEST_CASE("generate: examples")
{
    const auto k = generate({Family::Complete, 4, 4, 0});
    CHECK(k.edge_count() == 16);
    CHECK(density(k, VertexSubset::full(k, Side::X), VertexSubset::full(k, Side::Y)) == 1);

    const auto m = generate({Family::Matching, 5, 5, 0});
    CHECK(m.edge_count() == 5);
    for (Vertex i = 0; i < 5; ++i)
        CHECK(m.has_edge(i, i));
    for (std::size_t n : {2, 5, 9})
        CHECK(vc_dimension(TraceFamily::rows(generate({Family::Matching, n, n, 0})), 8).value == 1);

    const auto bd = generate({Family::BlockDiagonal, 8, 8, 0});
    CHECK(bd.edge_count() == 32);
    CHECK(bd.has_edge(0, 3));
    CHECK(bd.has_edge(4, 7));
    CHECK_FALSE(bd.has_edge(3, 4));

    const auto ps = generate({Family::Powerset, 8, 3, 0});
    CHECK(ps.edge_count() == 12);
    CHECK(vc_dimension(TraceFamily::rows(ps), 8).value == 3);
}

TEST_CASE("generate: parameter validation")
{
    CHECK_THROWS_AS(generate({Family::Complete, 0, 4, 0}), SpecError);
    CHECK_THROWS_AS(generate({Family::Powerset, 7, 3, 0}), SpecError);
    CHECK_THROWS_AS(generate({Family::BlockDiagonal, 1, 4, 0}), SpecError);
    FamilySpec er{Family::ErdosRenyi, 4, 4, 0};
    er.p = 1.5;
    CHECK_THROWS_AS(generate(er), SpecError);
    CHECK_THROWS_AS(parse_family("hypercube"), SpecError);
    for (auto f : {Family::IntervalIncidence, Family::BoxIncidence, Family::Threshold, Family::BlockDiagonal,
                   Family::Matching, Family::Complete, Family::ErdosRenyi, Family::Powerset})
        CHECK(parse_family(family_name(f)) == f);
}

TEST_CASE("property: generators are deterministic and side streams independent")
{
    for (auto f : {Family::IntervalIncidence, Family::BoxIncidence, Family::Threshold, Family::ErdosRenyi}) {
        const FamilySpec spec{f, 30, 25, 17};
        CHECK(generate(spec) == generate(spec));
        FamilySpec other = spec;
        other.seed = 18;
        CHECK_FALSE(generate(spec) == generate(other));
    }
    // Growing Y leaves the X objects untouched: the old columns are unchanged.
    const auto small = generate({Family::IntervalIncidence, 20, 10, 5});
    const auto large = generate({Family::IntervalIncidence, 20, 30, 5});
    for (Vertex x = 0; x < 20; ++x)
        for (Vertex y = 0; y < 10; ++y)
            CHECK(small.has_edge(x, y) == large.has_edge(x, y));
    const auto wide = generate({Family::Threshold, 20, 30, 5});
    const auto narrow = generate({Family::Threshold, 20, 10, 5});
    for (Vertex x = 0; x < 20; ++x)
        for (Vertex y = 0; y < 10; ++y)
            CHECK(wide.has_edge(x, y) == narrow.has_edge(x, y));
}

TEST_CASE("property: family VC claims on exhaustively checkable sizes")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto iv = generate({Family::IntervalIncidence, 20, 20, seed});
        CHECK(vc_dimension(TraceFamily::rows(iv), 8).value <= 2);
        CHECK(vc_dimension_of_relation(iv, 8).value <= 3);
        const auto th = generate({Family::Threshold, 20, 20, seed});
        CHECK(vc_dimension_of_relation(th, 8).value <= 1);
        FamilySpec box{Family::BoxIncidence, 20, 20, seed};
        box.dim = 2;
        CHECK(vc_dimension(TraceFamily::rows(generate(box)), 8).value <= 4);
    }
}
