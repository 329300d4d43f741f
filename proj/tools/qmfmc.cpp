// Command-line front end: quantum min-cut, flow constructions, teleportation
// protocols, brute-force scans and verification suites over network files.
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qmfmc/jsonio.hpp"
#include "qmfmc/mult_flow.hpp"
#include "qmfmc/network.hpp"
#include "qmfmc/protocol.hpp"
#include "qmfmc/tensor_oracle.hpp"

namespace {

using namespace qmfmc;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

long long oracle_cap(long long flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("QMFMC_ORACLE_CAP")) return std::atoll(env);
    return kDefaultOracleCap;
}

std::string side_names(const Network& net, const std::vector<char>& side, bool keep) {
    std::string out = "{";
    bool first = true;
    for (int v = 0; v < net.vertex_count(); ++v) {
        if (static_cast<bool>(side[v]) != keep) continue;
        if (!first) out += ",";
        out += net.name_of(v);
        first = false;
    }
    return out + "}";
}

std::string cut_text(const Network& net, const Cut& cut) {
    return side_names(net, cut.source_side, true) + "|" + side_names(net, cut.source_side, false);
}

int cmd_qmc(const std::string& path, const std::string& format, bool confirm, long long cap) {
    Network net = parse_network(slurp(path));
    if (format == "dot") {
        std::cout << network_dot(net);
        return kExitOk;
    }
    QmcResult res = quantum_min_cut(net);
    bool confirmed = false, checked = false;
    if (confirm && net.vertex_count() <= 20) {
        checked = true;
        confirmed = brute_force_qmc(net) == res.qmc;
    }
    if (format == "json") {
        ojson doc;
        doc["qmc"] = int_json(res.qmc);
        doc["cut"] = cut_json(net, res.witness);
        doc["brute_force_checked"] = checked;
        if (checked) doc["brute_force_confirmed"] = confirmed;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "QMC=" << res.qmc.get_str() << ", cut=" << cut_text(net, res.witness) << "\n";
        if (checked)
            std::cout << "brute-force confirmation: " << (confirmed ? "ok" : "MISMATCH") << "\n";
    }
    if (checked && !confirmed) {
        std::cerr << "error: brute-force enumeration disagrees with reduction min-cut\n";
        return kExitVerification;
    }
    return kExitOk;
}

int cmd_flow(const std::string& path, const std::string& field, bool integer, bool strict,
             long long k_arg, const std::string& format, long long cap) {
    Network net = parse_network(slurp(path));
    ojson doc;
    MultiplicativeFlow flow;
    Network flow_net = net;
    if (integer) {
        IntegerFlowPlan plan = plan_integer_flow(net);
        Int k = k_arg > 0 ? Int(static_cast<long>(k_arg)) : plan.k_min;
        IntegerFlowResult res = integer_flow(net, plan, k);
        flow = res.flow;
        flow_net = res.scaled;
        doc["mode"] = "integer";
        doc["k"] = int_json(res.k);
        doc["k_min"] = int_json(res.k_min);
        doc["n"] = int_json(res.n);
        doc["n0"] = int_json(plan.params.n0);
        doc["m0"] = int_json(plan.params.m0);
        doc["cut"] = cut_json(net, plan.params.cut);
        bool is_strict = verify_flow(flow_net, MultiplicativeFlow{FlowKind::StrictInteger, flow.edges}).ok();
        doc["already_strict"] = is_strict;
    } else if (strict) {
        BruteForceFlowResult res = brute_force_qmf_flow(net, /*strict=*/true, cap);
        flow = res.flow;
        doc["mode"] = "strict";
    } else {
        if (field != "rational") throw ParseError("unknown field \"" + field + "\"");
        flow = rational_max_flow(net);
        doc["mode"] = "rational";
    }
    Rat value = flow_value(flow_net, flow);
    VerificationReport report = verify_flow(flow_net, flow);
    Int qmc = quantum_min_cut(flow_net).qmc;
    doc["value"] = rat_json(value);
    doc["qmc"] = int_json(qmc);
    doc["achieves_qmc"] = value == Rat(qmc);
    doc["flow"] = flow_json(flow);
    doc["verification"] = report_json(report);

    if (format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        if (integer) std::cout << "n=" << doc["n"].dump() << " (k=" << doc["k"].dump() << ", k_min=" << doc["k_min"].dump() << ")\n";
        std::cout << "value=" << rat_str(value) << " (QMC=" << qmc.get_str() << ")"
                  << (report.ok() ? ", verified" : ", INVALID") << "\n";
        std::cout << doc["flow"].dump(2) << "\n";
    }
    if (!report.ok()) {
        std::cerr << "error: constructed flow failed verification\n";
        return kExitVerification;
    }
    // the rational and the integer construction must achieve QMC exactly
    if (!strict && value != Rat(qmc)) {
        std::cerr << "error: flow value " << rat_str(value) << " != QMC " << qmc.get_str() << "\n";
        return kExitVerification;
    }
    return kExitOk;
}

int cmd_protocol(const std::string& path, bool simulate, const std::string& format) {
    Network net = parse_network(slurp(path));
    ojson doc;
    Protocol prot;
    Network scaled = net;
    if (!source_sink_connected(net)) {
        doc["n"] = 1;
        doc["note"] = "source and sink are disconnected; empty protocol";
    } else {
        IntegerFlowPlan plan = plan_integer_flow(net);
        IntegerFlowResult res = integer_flow(net, plan, plan.k_min);
        scaled = res.scaled;
        MultiplicativeFlow strict = strictify(scaled, res.flow);
        prot = extract_protocol(scaled, strict);
        doc["n"] = int_json(res.n);
    }
    doc["protocol"] = protocol_json(prot);
    Int qmc = quantum_min_cut(scaled).qmc;
    doc["qmc"] = int_json(qmc);
    bool ok = prot.claimed_dimension == qmc;
    SimulationReport sim;
    if (simulate) {
        sim = simulate_protocol(scaled, prot);
        doc["simulation"] = simulation_json(scaled, sim);
        ok = ok && sim.ok();
    }
    if (format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "n=" << doc["n"].dump() << ", steps=" << prot.steps.size() << ", dimension="
                  << prot.claimed_dimension.get_str() << " (QMC=" << qmc.get_str() << ")\n";
        if (simulate)
            std::cout << "simulation: " << (sim.ok() ? "no violations" : "VIOLATIONS") << "\n";
    }
    if (!ok) {
        std::cerr << "error: protocol does not transmit the full min-cut dimension\n";
        return kExitVerification;
    }
    return kExitOk;
}

struct ScanRow {
    long long n = 0;
    bool skipped = false;
    Rat qmf_s, ratio;
    Int qmc;
    bool equal = false;
};

ScanRow scan_row(const Network& net, long long n, long long cap) {
    ScanRow row;
    row.n = n;
    Network scaled = scale_network(net, Int(static_cast<long>(n)));
    row.qmc = quantum_min_cut(scaled).qmc;
    try {
        row.qmf_s = brute_force_qmf(scaled, /*strict=*/true, cap);
    } catch (const BudgetError&) {
        row.skipped = true;
        return row;
    }
    row.ratio = row.qmf_s / Rat(row.qmc);
    row.equal = row.ratio == 1;
    return row;
}

int cmd_scan(const std::string& path, long long max_n, int jobs, const std::string& format,
             long long cap) {
    Network net = parse_network(slurp(path));
    std::vector<ScanRow> rows(static_cast<size_t>(max_n));
    if (jobs <= 1) {
        for (long long n = 1; n <= max_n; ++n) rows[n - 1] = scan_row(net, n, cap);
    } else {
        std::vector<std::future<void>> tasks;
        for (int j = 0; j < jobs; ++j) {
            tasks.push_back(std::async(std::launch::async, [&, j] {
                for (long long n = 1 + j; n <= max_n; n += jobs) rows[n - 1] = scan_row(net, n, cap);
            }));
        }
        for (auto& t : tasks) t.get();
    }
    if (format == "json") {
        ojson arr = ojson::array();
        for (const ScanRow& r : rows) {
            ojson row;
            row["n"] = r.n;
            if (r.skipped) {
                row["status"] = "skipped";
            } else {
                row["qmf_s"] = rat_json(r.qmf_s);
                row["qmc"] = int_json(r.qmc);
                row["ratio"] = rat_json(r.ratio);
                row["equal"] = r.equal;
                row["status"] = "ok";
            }
            arr.push_back(std::move(row));
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        std::cout << "n,qmf_s,qmc,ratio,equal,status\n";
        for (const ScanRow& r : rows) {
            if (r.skipped)
                std::cout << r.n << ",,,,,skipped\n";
            else
                std::cout << r.n << "," << rat_str(r.qmf_s) << "," << r.qmc.get_str() << ","
                          << rat_str(r.ratio) << "," << (r.equal ? 1 : 0) << ",ok\n";
        }
    }
    return kExitOk;
}

int cmd_verify(const std::string& path, const std::string& flow_path, std::uint64_t seed,
               int trials, long long cap) {
    Network net = parse_network(slurp(path));
    if (!flow_path.empty()) {
        MultiplicativeFlow flow = parse_flow(slurp(flow_path), net);
        VerificationReport report = verify_flow(net, flow);
        ojson doc;
        doc["value"] = rat_json(flow_value(net, flow));
        doc["verification"] = report_json(report);
        std::cout << doc.dump(2) << "\n";
        return report.ok() ? kExitOk : kExitVerification;
    }

    int failures = 0;
    auto check = [&](const std::string& name, bool pass, const std::string& detail = "") {
        std::cout << (pass ? "PASS " : "FAIL ") << name;
        if (!pass && !detail.empty()) std::cout << ": " << detail;
        std::cout << "\n";
        if (!pass) ++failures;
    };

    QmcResult qmc = quantum_min_cut(net);

    // cut-ratio identity on random conserving flows and random cuts
    {
        bool pass = true;
        std::string detail;
        std::mt19937_64 rng(seed);
        std::vector<int> free;
        for (int v = 0; v < net.vertex_count(); ++v)
            if (v != net.source && v != net.sink) free.push_back(v);
        for (int t = 0; t < trials && pass; ++t) {
            auto [scale, flow] = random_conserving_flow(net, seed + t);
            Network scaled = scale_network(net, scale);
            if (!verify_flow(scaled, flow).ok()) {
                pass = false;
                detail = "random flow failed verification";
                break;
            }
            std::vector<char> side(net.vertex_count(), 0);
            side[net.source] = 1;
            for (int v : free) side[v] = rng() % 2 == 0;
            Cut cut = make_cut(scaled, side);
            if (cut_ratio(scaled, flow, cut) != flow_value(scaled, flow)) {
                pass = false;
                detail = "cut ratio differs from flow value";
            }
        }
        check("cut-identity", pass, detail);
    }

    // rational flow achieves the min cut and saturates it
    {
        MultiplicativeFlow rational = rational_max_flow(net);
        bool verified = verify_flow(net, rational).ok();
        bool achieves = flow_value(net, rational) == Rat(qmc.qmc);
        check("rational-flow", verified && achieves);
        if (verified && achieves && net.vertex_count() <= 20)
            check("saturation", saturation_check(net, rational).ok());
    }

    // strict max flow never exceeds the min cut
    try {
        Rat qmf_s = brute_force_qmf(net, /*strict=*/true, cap);
        check("ordering", qmf_s <= Rat(qmc.qmc));
    } catch (const BudgetError&) {
        std::cout << "SKIP ordering (oracle cap)\n";
    }

    if (source_sink_connected(net)) {
        try {
            IntegerFlowPlan plan = plan_integer_flow(net);
            IntegerFlowResult res = integer_flow(net, plan, plan.k_min);
            Int scaled_qmc = quantum_min_cut(res.scaled).qmc;
            bool ok = verify_flow(res.scaled, res.flow).ok() &&
                      flow_value(res.scaled, res.flow) == Rat(scaled_qmc);
            check("integer-pipeline", ok);
            MultiplicativeFlow strict = strictify(res.scaled, res.flow);
            check("strictify", verify_flow(res.scaled, strict).ok() &&
                                   flow_value(res.scaled, strict) == Rat(scaled_qmc));
            Protocol prot = extract_protocol(res.scaled, strict);
            SimulationReport sim = simulate_protocol(res.scaled, prot);
            check("protocol", sim.ok() && prot.claimed_dimension == scaled_qmc);
        } catch (const BudgetError& e) {
            std::cout << "SKIP integer-pipeline (" << e.what() << ")\n";
        }
    } else {
        std::cout << "SKIP integer-pipeline (disconnected network)\n";
    }

    try {
        QmfTildeEstimate est = estimate_qmf_tilde(net, std::max(1, trials / 50), seed);
        check("tensor-bound", est.max_rank <= qmc.qmc);
    } catch (const BudgetError&) {
        std::cout << "SKIP tensor-bound (contraction budget)\n";
    }

    return failures == 0 ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact multiplicative max-flow / min-cut toolkit"};
    app.require_subcommand(1);

    std::string path, format = "text", field = "rational", flow_path;
    bool integer = false, strict = false, simulate = false, no_confirm = false;
    long long k_arg = 0, max_n = 10, cap_flag = 0;
    int jobs = 1, trials = 200;
    std::uint64_t seed = 1;

    CLI::App* qmc = app.add_subcommand("qmc", "quantum min-cut and witness");
    qmc->add_option("network", path, "network file (or - for stdin)")->required();
    qmc->add_option("--format", format)->check(CLI::IsMember({"text", "json", "dot"}));
    qmc->add_flag("--no-confirm", no_confirm, "skip brute-force confirmation");
    qmc->add_option("--oracle-cap", cap_flag);

    CLI::App* flow = app.add_subcommand("flow", "max-flow constructions");
    flow->add_option("network", path)->required();
    flow->add_option("--field", field, "flow field (rational)");
    flow->add_flag("--integer", integer, "integer flow on the scaled network");
    flow->add_option("--k", k_arg, "scale multiplier (defaults to k_min)");
    flow->add_flag("--strict", strict, "exhaustive max strict flow");
    flow->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    flow->add_option("--oracle-cap", cap_flag);

    CLI::App* protocol = app.add_subcommand("protocol", "teleportation protocol pipeline");
    protocol->add_option("network", path)->required();
    protocol->add_flag("--simulate", simulate, "run the dimension bookkeeping simulation");
    protocol->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    CLI::App* scan = app.add_subcommand("scan", "strict max-flow vs min-cut over scalings");
    scan->add_option("network", path)->required();
    scan->add_option("--max", max_n, "scan n = 1..max")->required();
    scan->add_option("--jobs", jobs, "parallel scan workers");
    scan->add_option("--format", format)->check(CLI::IsMember({"csv", "json", "text"}));
    scan->add_option("--oracle-cap", cap_flag);

    CLI::App* verify = app.add_subcommand("verify", "run all invariant suites on one network");
    verify->add_option("network", path)->required();
    verify->add_option("--flow", flow_path, "verify a serialized flow instead");
    verify->add_option("--seed", seed);
    verify->add_option("--trials", trials);
    verify->add_option("--oracle-cap", cap_flag);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        const long long cap = oracle_cap(cap_flag);
        if (qmc->parsed()) return cmd_qmc(path, format, !no_confirm, cap);
        if (flow->parsed()) {
            if (integer && strict) throw ParseError("--integer and --strict are exclusive");
            return cmd_flow(path, field, integer, strict, k_arg, format, cap);
        }
        if (protocol->parsed()) return cmd_protocol(path, simulate, format);
        if (scan->parsed()) return cmd_scan(path, max_n, jobs, format, cap);
        if (verify->parsed()) return cmd_verify(path, flow_path, seed, trials, cap);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitUsage;
}
