#include "oracles.hpp"

#include "vcreg/errors.hpp"
#include "vcreg/generators.hpp"
#include "vcreg/io.hpp"
#include "vcreg/refine.hpp"

#include <doctest.h>

#include <json.hpp>

#include <sstream>

using namespace vcreg;

TEST_CASE(".big: parse and round trip")
{
    std::istringstream in("# a comment\n\n3 2\n0 1\n# inline\n2 0\n");
    const auto g = io::read_big(in);
    CHECK(g.n_x() == 3);
    CHECK(g.n_y() == 2);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(2, 0));

    Rng rng = make_rng(71, {});
    for (int trial = 0; trial < 20; ++trial) {
        const auto h = oracle::random_relation(1 + uniform_below(rng, 40), 1 + uniform_below(rng, 40), 0.3, rng);
        std::stringstream ss;
        io::write_big(ss, h, "round trip\nsecond line");
        CHECK(io::read_big(ss) == h);
    }
}

TEST_CASE(".big: malformed input")
{
    auto parse = [](const char* text) {
        std::istringstream in(text);
        return io::read_big(in);
    };
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("2\n"), ParseError);
    CHECK_THROWS_AS(parse("0 2\n"), ParseError);
    CHECK_THROWS_AS(parse("2 2\n0 2\n"), ParseError);
    CHECK_THROWS_AS(parse("2 2\n0 1\n0 1\n"), ParseError);
    CHECK_THROWS_AS(parse("2 2\n0 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse("2 2\nx y\n"), ParseError);
    try {
        parse("2 2\n0 1\n5 0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("partition JSON: round trip with and without nets")
{
    const auto g = generate({Family::BlockDiagonal, 8, 8, 0});
    const auto res = regularize(g, LoopConfig{});
    const io::PartitionDocument doc{res.partition, res.trace.back().rho, make_rational(1, 2)};
    const auto text = io::partition_to_json(doc);
    const auto back = io::partition_from_json(text, g);
    CHECK(back.partition == res.partition);
    CHECK(back.energy == make_rational(1, 2));
    REQUIRE(back.epsilon);
    CHECK(*back.epsilon == make_rational(1, 2));
    REQUIRE(back.partition.provenance());
    CHECK(*back.partition.provenance() == *res.partition.provenance());
    CHECK(io::partition_to_json(back) == text);

    const auto j = nlohmann::json::parse(text);
    CHECK(j.at("energy").at("num") == "1");
    CHECK(j.at("energy").at("den") == "2");
    CHECK(j.at("x_blocks").size() == 2);

    const io::PartitionDocument bare{Partition::singletons(g), energy(g, Partition::singletons(g)), std::nullopt};
    const auto bare_back = io::partition_from_json(io::partition_to_json(bare));
    CHECK(bare_back.partition == bare.partition);
    CHECK_FALSE(bare_back.epsilon);
}

TEST_CASE("partition JSON: errors")
{
    const auto g = generate({Family::Matching, 3, 3, 0});
    const auto text = io::partition_to_json({Partition::trivial(g), 0, std::nullopt});
    const auto other = generate({Family::Matching, 4, 3, 0});
    CHECK_THROWS_AS(io::partition_from_json(text, other), GroundMismatchError);
    CHECK_THROWS_AS(io::partition_from_json("{"), ParseError);
    CHECK_THROWS_AS(io::partition_from_json("{\"x_blocks\": []}"), ParseError);
    CHECK_THROWS_AS(io::partition_from_json(R"({"x_blocks": [[0, 1], [1]], "y_blocks": [[0]]})"), InvalidArgument);
    CHECK_THROWS_AS(io::partition_from_json(R"({"x_blocks": [[0, -1]], "y_blocks": [[0]]})"), ParseError);
}

TEST_CASE("report JSON lists witnesses and counts")
{
    const auto g = generate({Family::BlockDiagonal, 8, 8, 0});
    const auto rep = partition_regularity(g, Partition::trivial(g), make_rational(1, 4));
    const auto j = nlohmann::json::parse(io::report_to_json(rep));
    CHECK(j.at("irregular_mass").at("num") == "1");
    CHECK(j.at("irregular_mass").at("den") == "1");
    CHECK(j.at("regular") == false);
    CHECK(j.at("witnesses").size() == 1);
    CHECK(j.at("counts").at("irregular-with-witness") == 1);
}

TEST_CASE("trace CSV: header, round trip, zeroed timing")
{
    const auto g = generate({Family::BlockDiagonal, 8, 8, 0});
    const auto res = regularize(g, LoopConfig{});
    std::stringstream ss;
    io::write_trace_csv(ss, res.trace, true);
    std::string header;
    std::getline(ss, header);
    CHECK(header == io::trace_csv_header);
    ss.seekg(0);
    const auto rows = io::read_trace_csv(ss);
    REQUIRE(rows.size() == res.trace.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(rows[k].rho == res.trace[k].rho);
        CHECK(rows[k].parts_x == res.trace[k].parts_x);
        CHECK(rows[k].irregular_mass == res.trace[k].irregular_mass);
        CHECK(rows[k].wall_ms == 0.0);
        if (k > 0)
            CHECK(rows[k].rho >= rows[k - 1].rho);
    }
    std::istringstream bad("iter,rho\n");
    CHECK_THROWS_AS(io::read_trace_csv(bad), ParseError);
}
