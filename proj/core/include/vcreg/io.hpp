#pragma once

#include "vcreg/bigraph.hpp"
#include "vcreg/partition.hpp"
#include "vcreg/refine.hpp"
#include "vcreg/regularity.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vcreg::io {

// ---- ".big" graph files ------------------------------------------------
//
//   # comment lines anywhere
//   n_x n_y
//   u v          one line per edge, 0 <= u < n_x, 0 <= v < n_y
//
// Duplicate edges are an error.

BipartiteRelation read_big(std::istream& in);
BipartiteRelation read_big_file(const std::filesystem::path& path);
void write_big(std::ostream& out, const BipartiteRelation& g, const std::string& comment = {});
void write_big_file(const std::filesystem::path& path, const BipartiteRelation& g, const std::string& comment = {});

// ---- Partition JSON ----------------------------------------------------

struct PartitionDocument {
    Partition partition;
    Rational energy;
    std::optional<Rational> epsilon;
};

std::string partition_to_json(const PartitionDocument& doc);
/// Ground sizes are inferred from the blocks. Throws ParseError on malformed
/// documents and InvalidArgument when the blocks do not form a partition.
PartitionDocument partition_from_json(const std::string& text);
/// As above, additionally throwing GroundMismatchError if the partition's
/// ground sets differ from the relation's sides.
PartitionDocument partition_from_json(const std::string& text, const BipartiteRelation& g);

// ---- Regularity report JSON ---------------------------------------------
//
// Pairs certified regular are only counted; witnessed and probable pairs are
// listed individually.

std::string report_to_json(const RegularityReport& report);

// ---- Energy trace CSV --------------------------------------------------

inline constexpr const char* trace_csv_header =
    "iter,rho_num,rho_den,parts_x,parts_y,net_x_size,net_y_size,irregular_mass_num,irregular_mass_den,wall_ms";

/// With `zero_wall_time` the wall_ms column is written as 0 so that output is
/// a pure function of the inputs.
void write_trace_csv(std::ostream& out, const std::vector<EnergyRecord>& trace, bool zero_wall_time = false);

struct TraceRow {
    std::uint64_t iter;
    Rational rho;
    std::size_t parts_x, parts_y, net_x_size, net_y_size;
    Rational irregular_mass;
    double wall_ms;
};

std::vector<TraceRow> read_trace_csv(std::istream& in);

// ---- helpers -----------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace vcreg::io
