#include "slitflow/io.hpp"

#include <fstream>
#include <limits>
#include <stdexcept>

namespace slitflow::io {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.precision(17);
  return out;
}

}  // namespace

void write_trace_csv(const chain::Trace& tr, const std::string& path) {
  auto out = open_out(path);
  out << "t,re,im\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    if (!tr.ok[i]) continue;
    out << tr.times[i] << ',' << tr.tips[i].real() << ',' << tr.tips[i].imag() << '\n';
  }
}

void write_state_csv(const chain::ChainState& st, const std::string& path) {
  auto out = open_out(path);
  out << "re0,im0,alive,T_explode,re,im\n";
  for (std::size_t i = 0; i < st.initial.size(); ++i) {
    out << st.initial[i].real() << ',' << st.initial[i].imag() << ','
        << static_cast<int>(st.alive[i]) << ',' << st.explosion_time[i] << ','
        << st.values[i].real() << ',' << st.values[i].imag() << '\n';
  }
}

void write_reparam_csv(const std::vector<double>& t, const std::vector<double>& lambda,
                       const std::vector<double>& u_tilde, const std::string& path) {
  if (t.size() != lambda.size() || t.size() != u_tilde.size()) {
    throw std::invalid_argument("write_reparam_csv: column length mismatch");
  }
  auto out = open_out(path);
  out << "t,lambda,u_tilde\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out << t[i] << ',' << lambda[i] << ',' << u_tilde[i] << '\n';
  }
}

json slit_field_to_json(const fields::SlitField& b) {
  return json{{"b", {b.b_m2, b.b_m1, b.b_0, b.b_1}},
              {"domain", conformal::domain_name(b.domain)}};
}

json complete_field_to_json(const fields::CompleteField& s) {
  return json{{"sigma", {s.sigma_m1, s.sigma_0, s.sigma_1}},
              {"domain", conformal::domain_name(s.domain)}};
}

fields::SlitField slit_field_from_json(const json& j) {
  const auto& b = j.at("b");
  if (!b.is_array() || b.size() != 4) {
    throw std::invalid_argument("slit field json: \"b\" must be an array of 4 reals");
  }
  const auto dom = conformal::domain_from_name(j.value("domain", "disk"));
  return fields::SlitField(b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                           b[3].get<double>(), dom);
}

fields::CompleteField complete_field_from_json(const json& j) {
  const auto& s = j.at("sigma");
  if (!s.is_array() || s.size() != 3) {
    throw std::invalid_argument("complete field json: \"sigma\" must be an array of 3 reals");
  }
  const auto dom = conformal::domain_from_name(j.value("domain", "disk"));
  return fields::CompleteField{s[0].get<double>(), s[1].get<double>(), s[2].get<double>(), dom};
}

json driving_path_to_json(const driving::DrivingPath& u) {
  return json{{"times", u.times()}, {"values", u.values()}};
}

driving::DrivingPath driving_path_from_json(const json& j) {
  return driving::DrivingPath(j.at("times").get<std::vector<double>>(),
                              j.at("values").get<std::vector<double>>());
}

json triple_to_json(const transforms::ChainTriple& triple) {
  json j = slit_field_to_json(triple.b);
  j["sigma"] = complete_field_to_json(triple.sigma)["sigma"];
  j["u"] = driving_path_to_json(triple.u);
  return j;
}

transforms::ChainTriple triple_from_json(const json& j) {
  return transforms::ChainTriple{slit_field_from_json(j), complete_field_from_json(j),
                                 driving_path_from_json(j.at("u"))};
}

}  // namespace slitflow::io
