#include "cli.hpp"

#include "vcreg/errors.hpp"
#include "vcreg/generators.hpp"
#include "vcreg/io.hpp"
#include "vcreg/parallel.hpp"
#include "vcreg/refine.hpp"
#include "vcreg/vc_dimension.hpp"
#include "vcreg/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <random>
#include <sstream>

namespace vcreg::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, bool ci)
{
    if (seed)
        return *seed;
    if (ci)
        throw InvalidArgument("--seed is required with --ci");
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string default_manifest(const std::string& output)
{
    return output + ".manifest.json";
}

json manifest_head(const char* command)
{
    json m;
    m["tool"] = "vcreg";
    m["version"] = vcreg::version;
    m["command"] = command;
    return m;
}

void write_manifest(const std::string& path, const json& m)
{
    io::write_text_file(path, m.dump(2) + "\n");
}

std::string relocate(const std::string& path, const std::string& out_dir)
{
    if (out_dir.empty() || path.empty())
        return path;
    return (fs::path(out_dir) / fs::path(path).filename()).string();
}

template <class F>
int guarded(std::ostream& err, F&& body)
{
    try {
        return body();
    } catch (const vcreg::Error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return exit_error;
}

int outcome_exit_code(Outcome o)
{
    switch (o) {
    case Outcome::Regular:
        return exit_ok;
    case Outcome::IterationCapped:
        return exit_capped;
    case Outcome::Stagnated:
        return exit_stagnated;
    }
    return exit_error;
}

} // namespace

int run_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        FamilySpec spec;
        spec.family = parse_family(args.family);
        spec.n_x = args.n_x;
        spec.n_y = args.n_y;
        spec.p = args.p;
        spec.dim = args.dim;
        spec.seed = resolve_seed(args.seed, args.ci);
        const auto g = generate(spec);

        std::ostringstream comment;
        comment << "family " << args.family << " nx " << args.n_x << " ny " << args.n_y << " seed " << spec.seed;
        if (spec.family == Family::ErdosRenyi)
            comment << " p " << args.p;
        if (spec.family == Family::BoxIncidence)
            comment << " dim " << args.dim;

        if (args.output.empty()) {
            io::write_big(out, g, comment.str());
            return exit_ok;
        }
        io::write_big_file(args.output, g, comment.str());

        json m = manifest_head("generate");
        m["args"] = {{"family", args.family}, {"nx", args.n_x}, {"ny", args.n_y}, {"seed", spec.seed},
                     {"p", args.p},           {"dim", args.dim}, {"ci", args.ci}};
        m["outcome"] = "ok";
        m["exit_code"] = exit_ok;
        m["edges"] = g.edge_count();
        m["outputs"] = {{"graph", args.output}};
        write_manifest(args.manifest.empty() ? default_manifest(args.output) : args.manifest, m);
        out << "wrote " << args.output << " (" << g.n_x() << " x " << g.n_y() << ", " << g.edge_count()
            << " edges)\n";
        return exit_ok;
    });
}

int run_partition(const PartitionArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (args.output.empty())
            throw InvalidArgument("partition needs -o OUT.json");
        if (args.ci && args.timing)
            throw InvalidArgument("--timing is not allowed with --ci");
        const auto g = io::read_big_file(args.input);

        LoopConfig cfg;
        cfg.r = args.r;
        cfg.d = args.d;
        cfg.seed = resolve_seed(args.seed, args.ci);
        cfg.max_iters = args.max_iters;
        cfg.net_budget.c0 = args.c0;
        cfg.net_budget.max_rounds = args.max_rounds;
        cfg.tester.exact_cap = args.exact_cap;
        cfg.tester.trials = args.trials;
        cfg.audit_vc = args.audit_vc;
        validate(cfg);

        const auto result = regularize(g, cfg);
        const Rational eps = make_rational(1, cfg.r);
        const Rational rho = result.trace.back().rho;
        io::write_text_file(args.output, io::partition_to_json({result.partition, rho, eps}));
        if (!args.trace.empty()) {
            std::ostringstream csv;
            io::write_trace_csv(csv, result.trace, !args.timing);
            io::write_text_file(args.trace, csv.str());
        }

        const int code = outcome_exit_code(result.outcome);
        json m = manifest_head("partition");
        m["args"] = {{"input", args.input},
                     {"r", cfg.r},
                     {"d", cfg.d},
                     {"seed", cfg.seed},
                     {"max_iters", args.max_iters},
                     {"effective_max_iters", effective_max_iters(cfg)},
                     {"c0", args.c0},
                     {"max_rounds", args.max_rounds},
                     {"exact_cap", args.exact_cap},
                     {"trials", args.trials},
                     {"audit_vc", args.audit_vc},
                     {"timing", args.timing},
                     {"ci", args.ci}};
        m["outcome"] = outcome_name(result.outcome);
        m["exit_code"] = code;
        m["rounds"] = result.rounds();
        m["outputs"] = {{"partition", args.output}, {"trace", args.trace.empty() ? json(nullptr) : json(args.trace)}};
        write_manifest(args.manifest.empty() ? default_manifest(args.output) : args.manifest, m);

        out << "outcome " << outcome_name(result.outcome) << ", rounds " << result.rounds() << ", rho "
            << to_string(rho) << ", blocks " << result.partition.block_count(Side::X) << " x "
            << result.partition.block_count(Side::Y) << '\n';
        return code;
    });
}

int run_check(const CheckArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto g = io::read_big_file(args.graph);
        const auto doc = io::partition_from_json(io::read_text_file(args.partition), g);
        const Rational eps = parse_rational(args.epsilon);

        TesterConfig cfg;
        cfg.exact_cap = args.exact_cap;
        cfg.trials = args.trials;
        cfg.seed = resolve_seed(args.seed, args.ci);
        const auto report = partition_regularity(g, doc.partition, eps, cfg);
        const int code = report.certified() ? exit_ok : exit_not_regular;
        const auto text = io::report_to_json(report);

        if (args.output.empty()) {
            out << text;
            return code;
        }
        io::write_text_file(args.output, text);
        json m = manifest_head("check");
        m["args"] = {{"graph", args.graph},         {"partition", args.partition}, {"epsilon", to_string(eps)},
                     {"exact_cap", args.exact_cap}, {"trials", args.trials},       {"seed", cfg.seed},
                     {"ci", args.ci}};
        m["outcome"] = report.certified() ? "regular" : "not-regular";
        m["exit_code"] = code;
        m["outputs"] = {{"report", args.output}};
        write_manifest(args.manifest.empty() ? default_manifest(args.output) : args.manifest, m);
        out << (report.certified() ? "regular" : "not regular") << ", irregular mass "
            << to_string(report.irregular_mass) << ", uncertain mass " << to_string(report.uncertain_mass) << '\n';
        return code;
    });
}

int run_vcdim(const VcdimArgs& args, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto g = io::read_big_file(args.input);
        const auto rep = vc_report(g, args.cap);
        auto entry = [](const VcResult& v) { return json{{"value", v.value}, {"exceeds_cap", v.exceeds_cap}}; };
        json j{{"cap", args.cap},
               {"primal", entry(rep.primal)},
               {"dual", entry(rep.dual)},
               {"symmetric", entry(rep.symmetric)}};
        const auto text = j.dump(2) + "\n";
        if (args.output.empty()) {
            out << text;
            return exit_ok;
        }
        io::write_text_file(args.output, text);
        json m = manifest_head("vcdim");
        m["args"] = {{"input", args.input}, {"cap", args.cap}};
        m["outcome"] = "ok";
        m["exit_code"] = exit_ok;
        m["outputs"] = {{"report", args.output}};
        write_manifest(args.manifest.empty() ? default_manifest(args.output) : args.manifest, m);
        return exit_ok;
    });
}

int run_rerun(const std::string& manifest_path, const std::string& out_dir, std::ostream& out, std::ostream& err)
{
    json m;
    try {
        m = json::parse(io::read_text_file(manifest_path));
    } catch (const std::exception& e) {
        err << "error: cannot read manifest: " << e.what() << '\n';
        return exit_error;
    }
    return guarded(err, [&]() -> int {
        const auto& a = m.at("args");
        const auto& o = m.at("outputs");
        const auto command = m.at("command").get<std::string>();
        auto out_path = [&](const char* key) {
            return o.at(key).is_null() ? std::string{} : relocate(o.at(key).get<std::string>(), out_dir);
        };
        const std::string manifest = out_dir.empty() ? std::string{} : relocate(manifest_path, out_dir);
        if (!out_dir.empty())
            fs::create_directories(out_dir);

        if (command == "generate") {
            GenerateArgs g;
            g.family = a.at("family");
            g.n_x = a.at("nx");
            g.n_y = a.at("ny");
            g.seed = a.at("seed").get<std::uint64_t>();
            g.p = a.at("p");
            g.dim = a.at("dim");
            g.ci = a.at("ci");
            g.output = out_path("graph");
            g.manifest = manifest;
            return run_generate(g, out, err);
        }
        if (command == "partition") {
            PartitionArgs p;
            p.input = a.at("input");
            p.r = a.at("r");
            p.d = a.at("d");
            p.seed = a.at("seed").get<std::uint64_t>();
            p.max_iters = a.at("max_iters");
            p.c0 = a.at("c0");
            p.max_rounds = a.at("max_rounds");
            p.exact_cap = a.at("exact_cap");
            p.trials = a.at("trials");
            p.audit_vc = a.at("audit_vc");
            p.timing = a.at("timing");
            p.ci = a.at("ci");
            p.output = out_path("partition");
            p.trace = out_path("trace");
            p.manifest = manifest;
            return run_partition(p, out, err);
        }
        if (command == "check") {
            CheckArgs c;
            c.graph = a.at("graph");
            c.partition = a.at("partition");
            c.epsilon = a.at("epsilon");
            c.exact_cap = a.at("exact_cap");
            c.trials = a.at("trials");
            c.seed = a.at("seed").get<std::uint64_t>();
            c.ci = a.at("ci");
            c.output = out_path("report");
            c.manifest = manifest;
            return run_check(c, out, err);
        }
        if (command == "vcdim") {
            VcdimArgs v;
            v.input = a.at("input");
            v.cap = a.at("cap");
            v.output = out_path("report");
            v.manifest = manifest;
            return run_vcdim(v, out, err);
        }
        throw InvalidArgument("manifest names unknown command '" + command + "'");
    });
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Regularity partitions for bipartite relations of bounded VC dimension", "vcreg"};
    app.set_version_flag("--version", std::string(vcreg::version));
    app.require_subcommand(1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: VCREG_THREADS or hardware)")
        ->check(CLI::PositiveNumber);

    GenerateArgs gen;
    std::uint64_t gen_seed = 0;
    auto* gen_cmd = app.add_subcommand("generate", "Write a graph from a generator family as a .big file");
    gen_cmd->add_option("--family", gen.family, "Family name")->required();
    gen_cmd->add_option("--nx", gen.n_x, "Size of X")->required();
    gen_cmd->add_option("--ny", gen.n_y, "Size of Y")->required();
    auto* gen_seed_opt = gen_cmd->add_option("--seed", gen_seed, "Random seed");
    gen_cmd->add_option("-p", gen.p, "Edge probability (erdos-renyi)");
    gen_cmd->add_option("--dim", gen.dim, "Box dimension (box-incidence)");
    gen_cmd->add_option("-o,--output", gen.output, "Output .big file (default: stdout)");
    gen_cmd->add_option("--manifest", gen.manifest, "Manifest path");
    gen_cmd->add_flag("--ci", gen.ci, "Require an explicit seed");

    PartitionArgs part;
    std::uint64_t part_seed = 0;
    auto* part_cmd = app.add_subcommand("partition", "Refine until the partition is 1/r-regular");
    part_cmd->add_option("input", part.input, "Input .big file")->required()->check(CLI::ExistingFile);
    part_cmd->add_option("-r", part.r, "Regularity parameter (epsilon = 1/r)")->check(CLI::Range(2, 1 << 20));
    part_cmd->add_option("-d", part.d, "VC dimension bound")->check(CLI::Range(1, 64));
    auto* part_seed_opt = part_cmd->add_option("--seed", part_seed, "Random seed");
    part_cmd->add_option("--max-iters", part.max_iters, "Iteration cap (0: 10^3 r^7)");
    part_cmd->add_option("--c0", part.c0, "Net sample-size constant");
    part_cmd->add_option("--max-rounds", part.max_rounds, "Net resampling rounds");
    part_cmd->add_option("--exact-cap", part.exact_cap, "Largest block side tested exhaustively");
    part_cmd->add_option("--trials", part.trials, "Random restarts per sampled pair test");
    part_cmd->add_flag("--audit-vc", part.audit_vc, "Sample-check the VC bound every round");
    part_cmd->add_flag("--timing", part.timing, "Record wall time in the trace");
    part_cmd->add_option("-o,--output", part.output, "Partition JSON")->required();
    part_cmd->add_option("--trace", part.trace, "Energy trace CSV");
    part_cmd->add_option("--manifest", part.manifest, "Manifest path");
    part_cmd->add_flag("--ci", part.ci, "Require an explicit seed");

    CheckArgs chk;
    std::uint64_t chk_seed = 0;
    auto* chk_cmd = app.add_subcommand("check", "Re-verify a stored partition");
    chk_cmd->add_option("graph", chk.graph, "Graph .big file")->required()->check(CLI::ExistingFile);
    chk_cmd->add_option("partition", chk.partition, "Partition JSON")->required()->check(CLI::ExistingFile);
    chk_cmd->add_option("--epsilon", chk.epsilon, "Regularity parameter, e.g. 1/4")->required();
    chk_cmd->add_option("--exact-cap", chk.exact_cap, "Largest block side tested exhaustively");
    chk_cmd->add_option("--trials", chk.trials, "Random restarts per sampled pair test");
    auto* chk_seed_opt = chk_cmd->add_option("--seed", chk_seed, "Random seed");
    chk_cmd->add_option("-o,--output", chk.output, "Report JSON (default: stdout)");
    chk_cmd->add_option("--manifest", chk.manifest, "Manifest path");
    chk_cmd->add_flag("--ci", chk.ci, "Require an explicit seed");

    VcdimArgs vc;
    auto* vc_cmd = app.add_subcommand("vcdim", "Primal, dual and symmetric VC dimension");
    vc_cmd->add_option("input", vc.input, "Input .big file")->required()->check(CLI::ExistingFile);
    vc_cmd->add_option("--cap", vc.cap, "Search cap")->check(CLI::Range(0, 30));
    vc_cmd->add_option("-o,--output", vc.output, "Report JSON (default: stdout)");
    vc_cmd->add_option("--manifest", vc.manifest, "Manifest path");

    std::string rerun_manifest, rerun_dir;
    auto* rerun_cmd = app.add_subcommand("rerun", "Repeat the run recorded in a manifest");
    rerun_cmd->add_option("manifest", rerun_manifest, "Manifest JSON")->required()->check(CLI::ExistingFile);
    rerun_cmd->add_option("--out-dir", rerun_dir, "Write outputs below this directory");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_error;
    }

    if (threads > 0)
        set_thread_count(threads);

    if (*gen_cmd) {
        if (*gen_seed_opt)
            gen.seed = gen_seed;
        return run_generate(gen, out, err);
    }
    if (*part_cmd) {
        if (*part_seed_opt)
            part.seed = part_seed;
        return run_partition(part, out, err);
    }
    if (*chk_cmd) {
        if (*chk_seed_opt)
            chk.seed = chk_seed;
        return run_check(chk, out, err);
    }
    if (*vc_cmd)
        return run_vcdim(vc, out, err);
    if (!rerun_dir.empty())
        fs::create_directories(rerun_dir);
    return run_rerun(rerun_manifest, rerun_dir, out, err);
}

} // namespace vcreg::cli
