#pragma once

#include <string>

#include <json.hpp>

#include "slitflow/chain.hpp"
#include "slitflow/reparam.hpp"
#include "slitflow/transforms.hpp"

namespace slitflow::io {

using nlohmann::json;

// CSV emission; schemas are part of the external interface and stable.
void write_trace_csv(const chain::Trace& tr, const std::string& path);       // t,re,im
void write_state_csv(const chain::ChainState& st, const std::string& path);  // re0,im0,alive,T_explode,re,im
void write_reparam_csv(const std::vector<double>& t, const std::vector<double>& lambda,
                       const std::vector<double>& u_tilde, const std::string& path);  // t,lambda,u_tilde

// JSON serialization of the coefficient records:
//   slit fields     {"b": [b_-2, b_-1, b_0, b_1], "domain": ...}
//   complete fields {"sigma": [s_-1, s_0, s_1], "domain": ...}
json slit_field_to_json(const fields::SlitField& b);
json complete_field_to_json(const fields::CompleteField& s);
fields::SlitField slit_field_from_json(const json& j);
fields::CompleteField complete_field_from_json(const json& j);

json driving_path_to_json(const driving::DrivingPath& u);
driving::DrivingPath driving_path_from_json(const json& j);

json triple_to_json(const transforms::ChainTriple& triple);
transforms::ChainTriple triple_from_json(const json& j);

}  // namespace slitflow::io
