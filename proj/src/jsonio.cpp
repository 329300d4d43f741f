#include "qmfmc/jsonio.hpp"

namespace qmfmc {

ojson int_json(const Int& v) {
    if (fits_i64(v)) return ojson(to_i64(v));
    return ojson(v.get_str());
}

namespace {

Int int_from_json(const ojson& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return Int(j.get<std::string>());
    throw ParseError("expected an integer or decimal string");
}

}  // namespace

ojson flow_json(const MultiplicativeFlow& f) {
    ojson doc;
    doc["kind"] = to_string(f.kind);
    ojson edges = ojson::array();
    for (const EdgeFlow& ef : f.edges) {
        ojson e;
        e["fwd"] = rat_json(ef.forward);
        e["bwd"] = rat_json(ef.backward);
        edges.push_back(std::move(e));
    }
    doc["edges"] = std::move(edges);
    return doc;
}

MultiplicativeFlow parse_flow(const std::string& text, const Network& net) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid flow JSON: ") + e.what());
    }
    try {
        MultiplicativeFlow f;
        f.kind = flow_kind_from_string(doc.at("kind").get<std::string>());
        for (const ojson& e : doc.at("edges"))
            f.edges.push_back({parse_rat(e.at("fwd").get<std::string>()),
                               parse_rat(e.at("bwd").get<std::string>())});
        if (static_cast<int>(f.edges.size()) != net.edge_count())
            throw ParseError("flow has " + std::to_string(f.edges.size()) + " edges, network has " +
                             std::to_string(net.edge_count()));
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed flow file: ") + e.what());
    }
}

ojson cut_json(const Network& net, const Cut& cut) {
    ojson doc;
    ojson source_side = ojson::array(), sink_side = ojson::array();
    for (int v = 0; v < net.vertex_count(); ++v)
        (cut.source_side[v] ? source_side : sink_side).push_back(net.name_of(v));
    doc["source_side"] = std::move(source_side);
    doc["sink_side"] = std::move(sink_side);
    doc["cut_edges"] = cut.cut_edges;
    doc["capacity_product"] = int_json(cut.capacity_product);
    doc["cardinality"] = cut.cardinality;
    return doc;
}

ojson report_json(const VerificationReport& report) {
    ojson doc;
    doc["ok"] = report.ok();
    ojson violations = ojson::array();
    for (const Violation& v : report.violations) {
        ojson vj;
        vj["constraint"] = v.constraint;
        if (v.edge >= 0) vj["edge"] = v.edge;
        if (v.vertex >= 0) vj["vertex"] = v.vertex;
        vj["detail"] = v.detail;
        violations.push_back(std::move(vj));
    }
    doc["violations"] = std::move(violations);
    return doc;
}

ojson protocol_json(const Protocol& prot) {
    ojson doc;
    ojson steps = ojson::array();
    for (const TeleportStep& s : prot.steps) {
        ojson sj;
        sj["p"] = int_json(s.dimension);
        ojson path = ojson::array();
        for (const Traversal& t : s.path) {
            ojson tj;
            tj["edge"] = t.edge_id;
            tj["dir"] = t.forward ? "fwd" : "bwd";
            path.push_back(std::move(tj));
        }
        sj["path"] = std::move(path);
        steps.push_back(std::move(sj));
    }
    doc["steps"] = std::move(steps);
    doc["dimension"] = int_json(prot.claimed_dimension);
    return doc;
}

Protocol parse_protocol(const std::string& text) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid protocol JSON: ") + e.what());
    }
    try {
        Protocol prot;
        for (const ojson& sj : doc.at("steps")) {
            TeleportStep step;
            step.dimension = int_from_json(sj.at("p"));
            for (const ojson& tj : sj.at("path")) {
                Traversal t;
                t.edge_id = tj.at("edge").get<int>();
                const std::string dir = tj.at("dir").get<std::string>();
                if (dir != "fwd" && dir != "bwd") throw ParseError("dir must be fwd or bwd");
                t.forward = dir == "fwd";
                step.path.push_back(t);
            }
            prot.steps.push_back(std::move(step));
        }
        prot.claimed_dimension = int_from_json(doc.at("dimension"));
        return prot;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed protocol file: ") + e.what());
    }
}

ojson simulation_json(const Network& net, const SimulationReport& report) {
    ojson doc;
    ojson usage = ojson::array();
    for (int e = 0; e < net.edge_count(); ++e) {
        ojson uj;
        uj["edge"] = e;
        uj["usage"] = int_json(report.edge_usage[e]);
        uj["capacity"] = int_json(net.edges[e].capacity);
        usage.push_back(std::move(uj));
    }
    doc["edge_usage"] = std::move(usage);
    doc["final_dimension"] = int_json(report.final_dimension);
    doc["ok"] = report.ok();
    ojson violations = ojson::array();
    for (const Violation& v : report.violations) {
        ojson vj;
        vj["constraint"] = v.constraint;
        if (v.edge >= 0) vj["edge"] = v.edge;
        vj["detail"] = v.detail;
        violations.push_back(std::move(vj));
    }
    doc["violations"] = std::move(violations);
    return doc;
}

ojson contraction_json(const ContractionResult& result) {
    ojson doc;
    doc["source_dim"] = int_json(result.source_dim);
    doc["sink_dim"] = int_json(result.sink_dim);
    doc["rank"] = int_json(result.rank);
    ojson comps = ojson::array();
    for (const ComponentContraction& c : result.components) {
        ojson cj;
        cj["vertices"] = c.vertices;
        cj["rows"] = int_json(c.row_dim);
        cj["cols"] = int_json(c.col_dim);
        cj["rank"] = int_json(c.rank);
        comps.push_back(std::move(cj));
    }
    doc["components"] = std::move(comps);
    return doc;
}

}  // namespace qmfmc
