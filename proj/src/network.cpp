#include "qmfmc/network.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace qmfmc {

namespace {

using json = nlohmann::ordered_json;

Int capacity_from_json(const json& d) {
    if (d.is_number_integer()) {
        return Int(static_cast<long>(d.get<std::int64_t>()));
    }
    if (d.is_string()) {
        const std::string s = d.get<std::string>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("capacity is not a positive integer: \"" + s + "\"");
        return Int(s);
    }
    throw ParseError("capacity must be an integer or a decimal string");
}

json capacity_to_json(const Int& d) {
    if (fits_i64(d)) return json(to_i64(d));
    return json(d.get_str());
}

}  // namespace

std::vector<std::vector<int>> Network::incidence() const {
    std::vector<std::vector<int>> inc(vertex_ids.size());
    for (const EdgeInstance& e : edges) {
        inc[e.u].push_back(e.id);
        inc[e.v].push_back(e.id);
    }
    return inc;
}

Int PrimeFactorization::product() const {
    Int out = 1;
    for (const auto& [p, exp] : factors) out *= ipow(p, exp);
    return out;
}

Network make_network(const std::vector<std::string>& vertices,
                     const std::string& source, const std::string& sink,
                     const std::vector<std::tuple<std::string, std::string, Int>>& edges) {
    Network net;
    std::unordered_map<std::string, int> index;
    for (const std::string& name : vertices) {
        if (index.count(name)) throw ParseError("duplicate vertex id \"" + name + "\"");
        index.emplace(name, static_cast<int>(net.vertex_ids.size()));
        net.vertex_ids.push_back(name);
    }
    auto lookup = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) throw ParseError("unknown vertex id \"" + name + "\"");
        return it->second;
    };
    net.source = lookup(source);
    net.sink = lookup(sink);
    if (net.source == net.sink) throw ParseError("source and sink must differ");
    for (const auto& [u, v, d] : edges) {
        EdgeInstance e;
        e.id = static_cast<int>(net.edges.size());
        e.u = lookup(u);
        e.v = lookup(v);
        e.capacity = d;
        if (e.u == e.v) throw ParseError("self-loop at vertex \"" + u + "\"");
        if (e.capacity < 1) throw ParseError("capacity < 1 on edge " + std::to_string(e.id));
        net.edges.push_back(std::move(e));
    }
    return net;
}

Network parse_network(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw ParseError("top level must be an object");
        std::vector<std::string> vertices = doc.at("vertices").get<std::vector<std::string>>();
        std::string source = doc.at("source").get<std::string>();
        std::string sink = doc.at("sink").get<std::string>();
        std::vector<std::tuple<std::string, std::string, Int>> edges;
        for (const json& e : doc.at("edges")) {
            edges.emplace_back(e.at("u").get<std::string>(), e.at("v").get<std::string>(),
                               capacity_from_json(e.at("d")));
        }
        return make_network(vertices, source, sink, edges);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed network file: ") + e.what());
    }
}

std::string serialize_network(const Network& net) {
    json doc;
    doc["vertices"] = net.vertex_ids;
    doc["source"] = net.name_of(net.source);
    doc["sink"] = net.name_of(net.sink);
    json edges = json::array();
    for (const EdgeInstance& e : net.edges) {
        json ej;
        ej["u"] = net.name_of(e.u);
        ej["v"] = net.name_of(e.v);
        ej["d"] = capacity_to_json(e.capacity);
        edges.push_back(std::move(ej));
    }
    doc["edges"] = std::move(edges);
    return doc.dump();
}

std::string network_dot(const Network& net) {
    std::ostringstream out;
    out << "graph network {\n";
    for (int v = 0; v < net.vertex_count(); ++v) {
        out << "  \"" << net.name_of(v) << "\"";
        if (v == net.source) out << " [shape=doublecircle,label=\"" << net.name_of(v) << " (source)\"]";
        if (v == net.sink) out << " [shape=doublecircle,label=\"" << net.name_of(v) << " (sink)\"]";
        out << ";\n";
    }
    for (const EdgeInstance& e : net.edges) {
        out << "  \"" << net.name_of(e.u) << "\" -- \"" << net.name_of(e.v) << "\" [label=\"e" << e.id
            << " d=" << e.capacity.get_str() << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

Network scale_network(const Network& net, const Int& n) {
    if (n < 1) throw PreconditionError("scale factor must be >= 1");
    Network scaled = net;
    for (EdgeInstance& e : scaled.edges) e.capacity *= n;
    return scaled;
}

PrimeFactorization factorize(const Int& m) {
    if (m < 1) throw PreconditionError("factorize requires m >= 1");
    PrimeFactorization out;
    Int rest = m;
    auto strip = [&](const Int& p) {
        unsigned long exp = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
            rest /= p;
            ++exp;
        }
        if (exp > 0) out.factors.emplace(p, exp);
    };
    strip(2);
    strip(3);
    // remaining candidates 6k±1
    Int p = 5;
    while (p * p <= rest) {
        strip(p);
        strip(p + 2);
        p += 6;
    }
    if (rest > 1) out.factors[rest] += 1;
    return out;
}

bool is_prime(const Int& p) {
    if (p < 2) return false;
    return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

bool source_sink_connected(const Network& net) {
    std::vector<char> seen(net.vertex_count(), 0);
    std::vector<int> stack{net.source};
    seen[net.source] = 1;
    auto inc = net.incidence();
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == net.sink) return true;
        for (int eid : inc[v]) {
            int w = net.edges[eid].other(v);
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return false;
}

}  // namespace qmfmc
