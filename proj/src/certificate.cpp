#include "allin/certificate.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace allin {

using nlohmann::ordered_json;

ordered_json point_json(const Point& p) { return {to_string(p.x), to_string(p.y), to_string(p.z)}; }

Point point_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("certificate: point must have 3 entries");
  return {parse_rat(j[0].get<std::string>()), parse_rat(j[1].get<std::string>()),
          parse_rat(j[2].get<std::string>())};
}

ordered_json to_json(const Certificate& c) {
  ordered_json j;
  j["format"] = kCertificateFormat;
  j["claim"] = c.claim;
  j["n"] = c.n;
  j["method"] = c.method;
  j["certified"] = c.certified;
  j["bound"] = to_string(c.bound);
  j["bound_decimal"] = to_double(c.bound);
  j["alpha_n"] = to_string(c.alpha_n);
  if (c.margin) j["margin"] = to_string(*c.margin);
  j["parts"] = ordered_json::array();
  for (const PartRecord& p : c.parts) {
    ordered_json pj;
    pj["name"] = p.name;
    pj["status"] = p.status;
    pj["value"] = to_string(p.value);
    pj["node_count"] = p.node_count;
    if (p.witness) pj["witness"] = point_json(*p.witness);
    j["parts"].push_back(pj);
  }
  j["witnesses"] = ordered_json::array();
  for (const WitnessRecord& w : c.witnesses) {
    ordered_json wj;
    wj["label"] = w.label;
    wj["point"] = point_json(w.point);
    wj["value"] = to_string(w.value);
    wj["context"] = w.context;
    j["witnesses"].push_back(wj);
  }
  j["counts"] = ordered_json::object();
  for (const auto& [k, v] : c.counts) j["counts"][k] = v;
  j["wall_time_seconds"] = c.wall_time;
  j["engine_version"] = c.engine_version;
  j["config"] = c.config;
  return j;
}

Certificate certificate_from_json(const ordered_json& j) {
  try {
    if (j.at("format").get<std::string>() != kCertificateFormat)
      throw std::invalid_argument("certificate: unknown format");
    Certificate c;
    c.claim = j.at("claim").get<std::string>();
    c.n = j.at("n").get<int>();
    c.method = j.at("method").get<std::string>();
    c.certified = j.at("certified").get<bool>();
    c.bound = parse_rat(j.at("bound").get<std::string>());
    c.alpha_n = parse_rat(j.at("alpha_n").get<std::string>());
    if (j.contains("margin")) c.margin = parse_rat(j["margin"].get<std::string>());
    for (const ordered_json& pj : j.at("parts")) {
      PartRecord p;
      p.name = pj.at("name").get<std::string>();
      p.status = pj.at("status").get<std::string>();
      p.value = parse_rat(pj.at("value").get<std::string>());
      p.node_count = pj.at("node_count").get<std::uint64_t>();
      if (pj.contains("witness")) p.witness = point_from_json(pj["witness"]);
      c.parts.push_back(std::move(p));
    }
    for (const ordered_json& wj : j.at("witnesses")) {
      c.witnesses.push_back({wj.at("label").get<std::string>(), point_from_json(wj.at("point")),
                             parse_rat(wj.at("value").get<std::string>()), wj.at("context").get<std::string>()});
    }
    for (const auto& [k, v] : j.at("counts").items()) c.counts[k] = v.get<std::uint64_t>();
    c.wall_time = j.at("wall_time_seconds").get<double>();
    c.engine_version = j.at("engine_version").get<std::string>();
    c.config = j.at("config");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("certificate: ") + e.what());
  }
}

std::string render(const Certificate& c) { return to_json(c).dump(2) + "\n"; }

std::string render_stable(const Certificate& c) {
  ordered_json j = to_json(c);
  j.erase("wall_time_seconds");
  return j.dump(2) + "\n";
}

void write_certificate(const std::string& path, const Certificate& c) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << render(c);
  if (!os) throw std::runtime_error("cannot write " + path);
}

Certificate read_certificate(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::invalid_argument("cannot read " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("certificate " + path + ": " + e.what());
  }
  return certificate_from_json(j);
}

}  // namespace allin
