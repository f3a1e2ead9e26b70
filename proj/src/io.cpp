#include "qgraph/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qgraph {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

json map_to_json(const ElementMap& m) {
    json j;
    j["vertex"] = m.vertex;
    j["edge"] = m.edge;
    std::vector<bool> r = m.reversed;
    j["reversed"] = r;
    return j;
}

ElementMap map_from_json(const json& j) {
    ElementMap m;
    m.vertex = j.at("vertex").get<std::vector<VertexId>>();
    m.edge = j.at("edge").get<std::vector<EdgeId>>();
    m.reversed = j.at("reversed").get<std::vector<bool>>();
    return m;
}

const char* tag_name(VertexTag t) { return t == VertexTag::dummy ? "dummy" : "original"; }

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string to_json(const GraphDocument& doc) {
    json j;
    j["format"] = "qgraph-graph";
    j["version"] = kGraphFormatVersion;

    json vertices = json::array();
    for (const Vertex& v : doc.graph.vertices()) {
        json jv{{"id", v.id}, {"tag", tag_name(v.tag)}};
        if (v.source_edge) jv["source_edge"] = *v.source_edge;
        vertices.push_back(jv);
    }
    j["vertices"] = vertices;

    json edges = json::array();
    for (const Edge& e : doc.graph.edges()) {
        edges.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"length", e.length}});
    }
    j["edges"] = edges;

    json conditions = json::array();
    for (const VertexCondition& c : doc.conditions) {
        json jc{{"vertex", c.vertex}, {"bonds", c.bonds}};
        switch (c.kind) {
            case VertexCondition::Kind::standard: jc["kind"] = "standard"; break;
            case VertexCondition::Kind::quasi_periodic:
                jc["kind"] = "quasi_periodic";
                jc["phase"] = {c.phase.real(), c.phase.imag()};
                break;
            case VertexCondition::Kind::general:
                throw Error(ErrorCode::UnsupportedCondition,
                            "vertex " + std::to_string(c.vertex) + ": only standard and quasi-periodic conditions are stored");
        }
        conditions.push_back(jc);
    }
    j["conditions"] = conditions;

    if (doc.action) {
        const ProductCyclicGroup& g = doc.action->group();
        j["action"] = {{"n1", g.n1},
                       {"n2", g.n2},
                       {"generators", {map_to_json(doc.action->generator(0)), map_to_json(doc.action->generator(1))}}};
    }
    return j.dump(2) + "\n";
}

GraphDocument graph_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "qgraph-graph") parse_fail("not a qgraph graph document");
        const int version = j.at("version").get<int>();
        if (version != kGraphFormatVersion) parse_fail("unsupported version " + std::to_string(version));

        std::vector<Vertex> vertices;
        for (const json& jv : j.at("vertices")) {
            Vertex v;
            v.id = jv.at("id").get<VertexId>();
            if (v.id != vertices.size()) parse_fail("vertex ids must be 0..n-1 in order");
            const std::string tag = jv.at("tag").get<std::string>();
            if (tag == "dummy") {
                v.tag = VertexTag::dummy;
            } else if (tag != "original") {
                parse_fail("unknown vertex tag '" + tag + "'");
            }
            if (jv.contains("source_edge")) v.source_edge = jv.at("source_edge").get<EdgeId>();
            vertices.push_back(v);
        }

        std::vector<EdgeSpec> edges;
        for (const json& je : j.at("edges")) {
            if (je.at("id").get<EdgeId>() != edges.size()) parse_fail("edge ids must be 0..m-1 in order");
            edges.push_back({je.at("u").get<VertexId>(), je.at("v").get<VertexId>(), je.at("length").get<double>()});
        }

        GraphDocument doc;
        doc.graph = MetricGraph::make(std::move(vertices), edges);

        if (j.contains("conditions")) {
            for (const json& jc : j.at("conditions")) {
                const auto v = jc.at("vertex").get<VertexId>();
                if (v >= doc.graph.vertex_count()) {
                    throw Error(ErrorCode::DanglingEndpoint, "condition for unknown vertex " + std::to_string(v));
                }
                const std::string kind = jc.at("kind").get<std::string>();
                const auto bonds = jc.at("bonds").get<std::vector<BondId>>();
                if (kind == "standard") {
                    VertexCondition c = VertexCondition::standard(doc.graph, v);
                    if (!bonds.empty()) c.bonds = bonds;
                    doc.conditions.push_back(std::move(c));
                } else if (kind == "quasi_periodic") {
                    const auto phase = jc.at("phase").get<std::vector<double>>();
                    if (phase.size() != 2 || bonds.size() != 2) parse_fail("quasi-periodic condition needs a phase pair and two bonds");
                    doc.conditions.push_back(
                        VertexCondition::quasi_periodic(doc.graph, v, cplx(phase[0], phase[1]), bonds[0], bonds[1]));
                } else {
                    throw Error(ErrorCode::UnsupportedCondition, "condition kind '" + kind + "'");
                }
            }
        }

        if (j.contains("action")) {
            const json& ja = j.at("action");
            const json& gens = ja.at("generators");
            if (gens.size() != 2) parse_fail("action needs exactly two generators");
            GraphAction a({ja.at("n1").get<int>(), ja.at("n2").get<int>()}, map_from_json(gens[0]), map_from_json(gens[1]));
            require_valid_action(doc.graph, a);
            doc.action = std::move(a);
        }
        return doc;
    } catch (const json::exception& e) {
        parse_fail(e.what());
    }
}

GraphDocument read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) parse_fail("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return graph_from_json(ss.str());
}

void write_graph(const std::string& path, const GraphDocument& doc) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out << to_json(doc);
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
    os << "# k_max=" << format_double(s.k_max) << "\n";
    os << "# grid_step=" << format_double(s.grid_step) << "\n";
    os << "# tol=" << format_double(s.tol) << "\n";
    os << "# tol_touch=" << format_double(s.tol_touch) << "\n";
    os << "k,lambda,order,source_label\n";
    for (const Root& r : s.roots) {
        std::string label;
        for (std::size_t i = 0; i < r.sources.size(); ++i) label += (i ? ";" : "") + r.sources[i];
        os << format_double(r.k) << "," << format_double(r.k * r.k) << "," << r.order << "," << label << "\n";
    }
}

Spectrum read_spectrum_csv(std::istream& is) {
    Spectrum s;
    std::string line;
    bool header = false;
    std::size_t lineno = 0;
    auto number = [&](const std::string& text) {
        double x = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
        if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
            parse_fail("line " + std::to_string(lineno) + ": bad number '" + text + "'");
        }
        return x;
    };
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(1, eq - 1);
            key.erase(0, key.find_first_not_of(' '));
            const double value = number(line.substr(eq + 1));
            if (key == "k_max") s.k_max = value;
            else if (key == "grid_step") s.grid_step = value;
            else if (key == "tol") s.tol = value;
            else if (key == "tol_touch") s.tol_touch = value;
            continue;
        }
        if (!header) {
            if (line != "k,lambda,order,source_label") parse_fail("missing header row");
            header = true;
            continue;
        }
        std::vector<std::string> cols;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cols.push_back(cell);
        if (cols.size() == 3) cols.emplace_back();
        if (cols.size() != 4) parse_fail("line " + std::to_string(lineno) + ": expected 4 columns");
        Root r;
        r.k = number(cols[0]);
        r.order = static_cast<int>(number(cols[2]));
        std::stringstream ss(cols[3]);
        std::string src;
        while (std::getline(ss, src, ';')) r.sources.push_back(src);
        if (!s.roots.empty() && r.k <= s.roots.back().k) parse_fail("rows must be sorted by k");
        s.roots.push_back(std::move(r));
    }
    if (!header) parse_fail("missing header row");
    return s;
}

Spectrum read_spectrum(const std::string& path) {
    std::ifstream in(path);
    if (!in) parse_fail("cannot open " + path);
    return read_spectrum_csv(in);
}

void write_spectrum(const std::string& path, const Spectrum& s) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    write_spectrum_csv(out, s);
}

}  // namespace qgraph
