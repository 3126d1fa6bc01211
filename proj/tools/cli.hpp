#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vcreg::cli {

// Exit codes shared by all subcommands.
inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_capped = 2;      // partition: iteration cap reached
inline constexpr int exit_stagnated = 3;   // partition: energy stopped growing
inline constexpr int exit_not_regular = 2; // check: partition not certified

struct GenerateArgs {
    std::string family;
    std::size_t n_x = 0;
    std::size_t n_y = 0;
    std::optional<std::uint64_t> seed;
    double p = 0.5;
    int dim = 2;
    std::string output;
    std::string manifest;
    bool ci = false;
};

struct PartitionArgs {
    std::string input;
    std::int64_t r = 2;
    int d = 1;
    std::optional<std::uint64_t> seed;
    std::uint64_t max_iters = 0;
    double c0 = 8.0;
    int max_rounds = 6;
    std::size_t exact_cap = 14;
    std::size_t trials = 16;
    bool audit_vc = false;
    bool timing = false;
    std::string output;
    std::string trace;
    std::string manifest;
    bool ci = false;
};

struct CheckArgs {
    std::string graph;
    std::string partition;
    std::string epsilon;
    std::size_t exact_cap = 14;
    std::size_t trials = 16;
    std::optional<std::uint64_t> seed;
    std::string output;
    std::string manifest;
    bool ci = false;
};

struct VcdimArgs {
    std::string input;
    int cap = 8;
    std::string output;
    std::string manifest;
};

int run_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err);
int run_partition(const PartitionArgs& args, std::ostream& out, std::ostream& err);
int run_check(const CheckArgs& args, std::ostream& out, std::ostream& err);
int run_vcdim(const VcdimArgs& args, std::ostream& out, std::ostream& err);

/// Re-executes the run recorded in a manifest. With a non-empty `out_dir`,
/// outputs keep their file names but are written below `out_dir`.
int run_rerun(const std::string& manifest_path, const std::string& out_dir, std::ostream& out, std::ostream& err);

/// Full command line without the program name, e.g. {"partition", "-r", "2", ...}.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace vcreg::cli
