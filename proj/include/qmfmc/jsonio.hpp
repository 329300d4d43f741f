#ifndef QMFMC_JSONIO_HPP
#define QMFMC_JSONIO_HPP

#include <json.hpp>

#include "qmfmc/mult_flow.hpp"
#include "qmfmc/network.hpp"
#include "qmfmc/protocol.hpp"
#include "qmfmc/tensor_oracle.hpp"

namespace qmfmc {

using ojson = nlohmann::ordered_json;

// Integers emit as JSON numbers while they fit, decimal strings beyond;
// rationals always as canonical "p" / "p/q" strings.
ojson int_json(const Int& v);
inline ojson rat_json(const Rat& r) { return ojson(rat_str(r)); }

ojson flow_json(const MultiplicativeFlow& f);
MultiplicativeFlow parse_flow(const std::string& text, const Network& net);

ojson cut_json(const Network& net, const Cut& cut);
ojson report_json(const VerificationReport& report);
ojson protocol_json(const Protocol& prot);
Protocol parse_protocol(const std::string& text);
ojson simulation_json(const Network& net, const SimulationReport& report);
ojson contraction_json(const ContractionResult& result);

}  // namespace qmfmc

#endif
