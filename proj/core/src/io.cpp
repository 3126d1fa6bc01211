#include "vcreg/io.hpp"

#include "vcreg/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace vcreg::io {

using nlohmann::json;

namespace {

bool is_blank_or_comment(const std::string& line)
{
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

std::string location(std::size_t line_no)
{
    return "line " + std::to_string(line_no) + ": ";
}

json rational_json(const Rational& q)
{
    return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}, {"float", q.get_d()}};
}

Rational rational_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw ParseError("rational must be an object with num and den");
    Integer num, den;
    if (num.set_str(j.at("num").get<std::string>(), 10) != 0 || den.set_str(j.at("den").get<std::string>(), 10) != 0)
        throw ParseError("rational num/den must be decimal integer strings");
    return make_rational(num, den);
}

json indices_json(const VertexSubset& s)
{
    json arr = json::array();
    s.members().for_each([&](std::size_t v) { arr.push_back(v); });
    return arr;
}

std::vector<Vertex> indices_from_json(const json& j)
{
    if (!j.is_array())
        throw ParseError("expected an array of vertex indices");
    std::vector<Vertex> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number_unsigned())
            throw ParseError("vertex indices must be non-negative integers");
        out.push_back(v.get<Vertex>());
    }
    return out;
}

std::vector<VertexSubset> blocks_from_json(const json& j, Side side, std::size_t& ground)
{
    if (!j.is_array() || j.empty())
        throw ParseError(std::string(side == Side::X ? "x_blocks" : "y_blocks") + " must be a nonempty array");
    std::vector<std::vector<Vertex>> lists;
    ground = 0;
    for (const auto& block : j) {
        lists.push_back(indices_from_json(block));
        ground += lists.back().size();
    }
    std::vector<VertexSubset> out;
    out.reserve(lists.size());
    for (const auto& l : lists)
        out.emplace_back(side, ground, l);
    return out;
}

} // namespace

BipartiteRelation read_big(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::pair<std::size_t, std::size_t>> sizes;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line))
            continue;
        std::istringstream fields(line);
        long long a = 0, b = 0;
        std::string extra;
        if (!(fields >> a >> b) || (fields >> extra))
            throw ParseError(location(line_no) + "expected two integers");
        if (!sizes) {
            if (a < 1 || b < 1)
                throw ParseError(location(line_no) + "sizes must be >= 1");
            sizes.emplace(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
            continue;
        }
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= sizes->first ||
            static_cast<std::size_t>(b) >= sizes->second)
            throw ParseError(location(line_no) + "edge endpoint out of range");
        edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
    if (!sizes)
        throw ParseError("missing \"n_x n_y\" header line");

    std::vector<Bits> rows(sizes->first, Bits(sizes->second));
    for (const auto& [x, y] : edges) {
        if (rows[x].test(y))
            throw ParseError("duplicate edge " + std::to_string(x) + " " + std::to_string(y));
        rows[x].set(y);
    }
    return BipartiteRelation(sizes->first, sizes->second, std::move(rows));
}

BipartiteRelation read_big_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string());
    return read_big(in);
}

void write_big(std::ostream& out, const BipartiteRelation& g, const std::string& comment)
{
    if (!comment.empty()) {
        std::istringstream lines(comment);
        std::string line;
        while (std::getline(lines, line))
            out << "# " << line << '\n';
    }
    out << g.n_x() << ' ' << g.n_y() << '\n';
    for (const auto& [x, y] : g.edges())
        out << x << ' ' << y << '\n';
}

void write_big_file(const std::filesystem::path& path, const BipartiteRelation& g, const std::string& comment)
{
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write " + path.string());
    write_big(out, g, comment);
}

std::string partition_to_json(const PartitionDocument& doc)
{
    const auto& p = doc.partition;
    json j;
    j["x_blocks"] = json::array();
    for (const auto& b : p.x_blocks())
        j["x_blocks"].push_back(indices_json(b));
    j["y_blocks"] = json::array();
    for (const auto& b : p.y_blocks())
        j["y_blocks"].push_back(indices_json(b));
    j["energy"] = rational_json(doc.energy);
    if (const auto& nets = p.provenance())
        j["nets"] = json{{"x", indices_json(nets->x_net)}, {"y", indices_json(nets->y_net)},
                         {"quality", rational_json(nets->quality)}};
    else
        j["nets"] = nullptr;
    j["epsilon"] = doc.epsilon ? rational_json(*doc.epsilon) : json(nullptr);
    return j.dump(2) + "\n";
}

PartitionDocument partition_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid partition JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("x_blocks") || !j.contains("y_blocks"))
        throw ParseError("partition JSON needs x_blocks and y_blocks");

    try {
        std::size_t n_x = 0, n_y = 0;
        auto xb = blocks_from_json(j.at("x_blocks"), Side::X, n_x);
        auto yb = blocks_from_json(j.at("y_blocks"), Side::Y, n_y);

        std::optional<NetPair> provenance;
        if (j.contains("nets") && !j.at("nets").is_null()) {
            const auto& nets = j.at("nets");
            const auto xn = indices_from_json(nets.at("x"));
            const auto yn = indices_from_json(nets.at("y"));
            provenance = NetPair{VertexSubset(Side::X, n_x, xn), VertexSubset(Side::Y, n_y, yn),
                                 nets.contains("quality") ? rational_from_json(nets.at("quality")) : Rational(1)};
        }
        PartitionDocument doc{Partition(std::move(xb), std::move(yb), std::move(provenance)),
                              j.contains("energy") ? rational_from_json(j.at("energy")) : Rational(0),
                              std::nullopt};
        if (j.contains("epsilon") && !j.at("epsilon").is_null())
            doc.epsilon = rational_from_json(j.at("epsilon"));
        return doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid partition JSON: ") + e.what());
    }
}

PartitionDocument partition_from_json(const std::string& text, const BipartiteRelation& g)
{
    auto doc = partition_from_json(text);
    if (doc.partition.ground_size(Side::X) != g.n_x() || doc.partition.ground_size(Side::Y) != g.n_y())
        throw GroundMismatchError("partition covers " + std::to_string(doc.partition.ground_size(Side::X)) + " x " +
                                  std::to_string(doc.partition.ground_size(Side::Y)) + " vertices, graph is " +
                                  std::to_string(g.n_x()) + " x " + std::to_string(g.n_y()));
    return doc;
}

std::string report_to_json(const RegularityReport& report)
{
    json j;
    j["epsilon"] = rational_json(report.epsilon);
    j["regular"] = report.regular();
    j["certified"] = report.certified();
    j["irregular_mass"] = rational_json(report.irregular_mass);
    j["uncertain_mass"] = rational_json(report.uncertain_mass);
    j["blocks"] = json{{"x", report.x_blocks}, {"y", report.y_blocks}};
    j["counts"] = json{
        {verdict_name(PairVerdict::RegularCertified), report.count(PairVerdict::RegularCertified)},
        {verdict_name(PairVerdict::IrregularWitnessed), report.count(PairVerdict::IrregularWitnessed)},
        {verdict_name(PairVerdict::RegularProbable), report.count(PairVerdict::RegularProbable)},
    };
    json witnesses = json::array();
    for (const auto& w : report.witnesses)
        witnesses.push_back(json{{"i", w.i},
                                 {"j", w.j},
                                 {"wx", indices_json(w.wx)},
                                 {"wy", indices_json(w.wy)},
                                 {"defect", rational_json(w.defect)}});
    j["witnesses"] = std::move(witnesses);
    json probable = json::array();
    for (std::size_t i = 0; i < report.x_blocks; ++i)
        for (std::size_t jj = 0; jj < report.y_blocks; ++jj)
            if (report.verdict(i, jj) == PairVerdict::RegularProbable)
                probable.push_back(json::array({i, jj}));
    j["probable_pairs"] = std::move(probable);
    j["tester"] = json{{"exact_cap", report.config.exact_cap},
                       {"trials", report.config.trials},
                       {"seed", report.config.seed},
                       {"exact_only", report.config.exact_only}};
    return j.dump(2) + "\n";
}

void write_trace_csv(std::ostream& out, const std::vector<EnergyRecord>& trace, bool zero_wall_time)
{
    out << trace_csv_header << '\n';
    for (const auto& r : trace) {
        out << r.iter << ',' << r.rho.get_num().get_str() << ',' << r.rho.get_den().get_str() << ',' << r.parts_x
            << ',' << r.parts_y << ',' << r.net_x_size << ',' << r.net_y_size << ','
            << r.irregular_mass.get_num().get_str() << ',' << r.irregular_mass.get_den().get_str() << ',';
        if (zero_wall_time) {
            out << 0;
        } else {
            std::ostringstream ms;
            ms.setf(std::ios::fixed);
            ms.precision(3);
            ms << r.wall_ms;
            out << ms.str();
        }
        out << '\n';
    }
}

std::vector<TraceRow> read_trace_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != trace_csv_header)
        throw ParseError("trace CSV header mismatch");
    std::vector<TraceRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::istringstream fields(line);
        std::string cell;
        while (std::getline(fields, cell, ','))
            cells.push_back(cell);
        if (cells.size() != 10)
            throw ParseError(location(line_no) + "expected 10 columns");
        try {
            TraceRow r{std::stoull(cells[0]),
                       make_rational(Integer(cells[1]), Integer(cells[2])),
                       std::stoull(cells[3]),
                       std::stoull(cells[4]),
                       std::stoull(cells[5]),
                       std::stoull(cells[6]),
                       make_rational(Integer(cells[7]), Integer(cells[8])),
                       std::stod(cells[9])};
            rows.push_back(std::move(r));
        } catch (const std::exception& e) {
            throw ParseError(location(line_no) + e.what());
        }
    }
    return rows;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot write " + path.string());
    out << text;
}

} // namespace vcreg::io
