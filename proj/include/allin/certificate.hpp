#pragma once

// Self-describing record of a certified bound. Every exact quantity is stored
// as "p/q" text; decimals appear only as annotations.

#include "allin/linear.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace allin {

inline constexpr const char* kEngineVersion = "allin 1.0.0";
inline constexpr const char* kCertificateFormat = "allin-certificate/1";

struct PartRecord {
  std::string name;
  std::string status;
  Rat value;
  std::uint64_t node_count = 0;
  std::optional<Point> witness;
};

struct WitnessRecord {
  std::string label;
  Point point;
  Rat value;
  std::string context;
};

struct Certificate {
  std::string claim;
  int n = 0;
  Rat bound;
  Rat alpha_n;
  std::optional<Rat> margin;
  std::string method;
  bool certified = false;
  std::vector<PartRecord> parts;
  std::vector<WitnessRecord> witnesses;
  std::map<std::string, std::uint64_t> counts;
  double wall_time = 0;
  std::string engine_version = kEngineVersion;
  nlohmann::ordered_json config;
};

nlohmann::ordered_json to_json(const Certificate& c);
/// Throws std::invalid_argument on a malformed document.
Certificate certificate_from_json(const nlohmann::ordered_json& j);

/// Pretty-printed document with a trailing newline.
std::string render(const Certificate& c);
/// The document without wall time, for comparing runs.
std::string render_stable(const Certificate& c);

void write_certificate(const std::string& path, const Certificate& c);
Certificate read_certificate(const std::string& path);

nlohmann::ordered_json point_json(const Point& p);
Point point_from_json(const nlohmann::ordered_json& j);

}  // namespace allin
