#include "kwtopo/json_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace kwtopo {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) throw Error("unknown field '" + it.key() + "' in " + where);
    }
}

const char* kind_name(FnKind k) {
    switch (k) {
        case FnKind::Equality: return "equality";
        case FnKind::Parity: return "parity";
        case FnKind::Table: return "table";
    }
    return "?";
}

} // namespace

std::string nfg_to_json(const Nfg& n) {
    json doc;
    doc["q"] = n.modulus();
    json nodes = json::array();
    for (size_t i = 0; i < n.node_count(); ++i) {
        const LocalFunction& f = n.node(i);
        json node;
        node["id"] = i;
        node["kind"] = kind_name(f.kind());
        node["degree"] = f.degree();
        if (f.kind() == FnKind::Table) {
            json vals = json::array();
            for (const Cplx& v : f.values()) vals.push_back({v.real(), v.imag()});
            node["values"] = std::move(vals);
        }
        nodes.push_back(std::move(node));
    }
    doc["nodes"] = std::move(nodes);

    json edges = json::array();
    for (size_t pos = 0; pos < n.edge_count(); ++pos) {
        const Edge& e = n.edge(pos);
        json edge;
        edge["id"] = e.id;
        json atts = json::array();
        for (const auto& at : e.ends) atts.push_back({{"node", at.node}, {"port", at.port}});
        edge["attachments"] = std::move(atts);
        json neg = json::array();
        for (size_t k = 0; k < e.negated.size(); ++k)
            if (e.negated[k]) neg.push_back(k);
        edge["negated"] = std::move(neg);
        edges.push_back(std::move(edge));
    }
    doc["edges"] = std::move(edges);
    return doc.dump(2);
}

Nfg nfg_from_json(const std::string& text) {
    json doc = json::parse(text);
    if (!doc.is_object()) throw Error("NFG document must be an object");
    reject_unknown(doc, {"q", "nodes", "edges"}, "NFG document");
    if (!doc.contains("q") || !doc.contains("nodes") || !doc.contains("edges"))
        throw Error("NFG document needs q, nodes, edges");

    uint32_t q = doc["q"].get<uint32_t>();
    Nfg n(q);

    // First pass: degrees. Indicators may omit `degree`; infer it from the
    // attachment count.
    std::map<int64_t, int> degree_by_id;
    for (const json& edge : doc["edges"]) {
        if (!edge.contains("attachments")) throw Error("edge without attachments");
        for (const json& at : edge["attachments"])
            degree_by_id[at.at("node").get<int64_t>()]++;
    }

    std::map<int64_t, int> index_by_id;
    for (const json& node : doc["nodes"]) {
        reject_unknown(node, {"id", "kind", "degree", "values"}, "node");
        int64_t id = node.at("id").get<int64_t>();
        if (index_by_id.count(id)) throw Error("duplicate node id");
        std::string kind = node.at("kind").get<std::string>();
        int degree = node.contains("degree") ? node["degree"].get<int>()
                                             : degree_by_id[id];
        if (degree < 1) throw Error("node degree must be >= 1");
        if (degree_by_id.count(id) && degree_by_id[id] != degree)
            throw Error("node degree does not match its attachment count");

        int idx;
        if (kind == "equality") {
            idx = n.add_equality(degree);
        } else if (kind == "parity") {
            idx = n.add_parity(degree);
        } else if (kind == "table") {
            if (!node.contains("values")) throw Error("table node without values");
            std::vector<Cplx> values;
            for (const json& v : node["values"]) {
                if (!v.is_array() || v.size() != 2)
                    throw Error("table values must be [re, im] pairs");
                values.emplace_back(v[0].get<double>(), v[1].get<double>());
            }
            idx = n.add_table(degree, std::move(values));
        } else {
            throw Error("unknown node kind '" + kind + "'");
        }
        index_by_id[id] = idx;
    }

    for (const json& edge : doc["edges"]) {
        reject_unknown(edge, {"id", "attachments", "negated"}, "edge");
        int id = edge.at("id").get<int>();
        std::vector<Attachment> ends;
        for (const json& at : edge["attachments"]) {
            reject_unknown(at, {"node", "port"}, "attachment");
            int64_t nid = at.at("node").get<int64_t>();
            if (!index_by_id.count(nid)) throw Error("attachment references unknown node");
            ends.push_back({index_by_id[nid], at.at("port").get<int>()});
        }
        std::vector<bool> neg(ends.size(), false);
        if (edge.contains("negated"))
            for (const json& k : edge["negated"]) {
                size_t i = k.get<size_t>();
                if (i >= ends.size()) throw Error("negated index out of range");
                neg[i] = true;
            }
        if (ends.size() == 1)
            n.add_half_edge(ends[0], neg[0], id);
        else if (ends.size() == 2)
            n.add_edge(ends[0], ends[1], neg[0], neg[1], id);
        else
            throw Error("edge must have one or two attachments");
    }
    n.finalize();
    return n;
}

void save_nfg(const Nfg& n, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << nfg_to_json(n) << "\n";
}

Nfg load_nfg(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return nfg_from_json(ss.str());
}

std::string ledger_to_json(const ScaleLedger& ledger) {
    json doc;
    doc["schema_version"] = 1;
    doc["q"] = ledger.q;
    doc["q_exponent"] = ledger.q_exponent;
    doc["real_factor"] = ledger.real_factor;
    doc["value"] = ledger.value();
    doc["original_edge_count"] = ledger.original_edge_count;
    json entries = json::array();
    for (const auto& e : ledger.entries)
        entries.push_back({{"node", e.node},
                           {"note", e.note},
                           {"q_exponent", e.q_exponent},
                           {"real_factor", e.real_factor}});
    doc["entries"] = std::move(entries);
    return doc.dump(2);
}

std::string complex_to_json(const ChainComplex& c) {
    json doc;
    doc["schema_version"] = 1;
    doc["q"] = c.modulus();
    json cells = json::array();
    for (int i = 0; i <= c.top_dimension(); ++i) cells.push_back(c.cell_labels(i));
    doc["cells"] = std::move(cells);
    json boundaries = json::array();
    for (int i = 1; i <= c.top_dimension(); ++i) {
        const ZqMatrix& b = c.boundary(i);
        json rows = json::array();
        for (size_t r = 0; r < b.rows(); ++r) {
            json row = json::array();
            for (size_t col = 0; col < b.cols(); ++col) row.push_back(b.at(r, col));
            rows.push_back(std::move(row));
        }
        boundaries.push_back(std::move(rows));
    }
    doc["boundaries"] = std::move(boundaries);
    return doc.dump(2);
}

std::string complex_to_dot(const ChainComplex& c) {
    const ZqMatrix& d1 = c.boundary(1);
    uint32_t q = c.modulus();
    std::ostringstream out;
    out << "digraph skeleton {\n";
    for (const auto& v : c.cell_labels(0)) out << "  " << v << ";\n";
    for (size_t e = 0; e < d1.cols(); ++e) {
        int tail = -1, head = -1;
        for (size_t v = 0; v < d1.rows(); ++v) {
            uint8_t x = d1.at(v, e);
            if (x == 0) continue;
            if (q == 2) {
                if (tail < 0)
                    tail = int(v);
                else
                    head = int(v);
            } else if (x == 1) {
                head = int(v);
            } else if (x == q - 1) {
                tail = int(v);
            }
        }
        if (tail >= 0 && head >= 0)
            out << "  " << c.cell_labels(0)[tail] << " -> " << c.cell_labels(0)[head]
                << " [label=\"" << c.cell_labels(1)[e] << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace kwtopo
