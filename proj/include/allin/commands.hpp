#pragma once

// The command layer behind the allin-cert executable. Each command writes a
// human-readable report to `out` and returns an exit code.

#include "allin/certificate.hpp"
#include "allin/expansion.hpp"
#include "allin/simulator.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace allin {

inline constexpr int kExitCertified = 0;
inline constexpr int kExitNotCertified = 1;
inline constexpr int kExitInputError = 2;

struct Request {
  std::string command;

  // Claim and pipeline.
  std::string claim = "lemma-xy";  // lemma-xy | lemma-yz | theorem-1 | custom
  std::string method;              // empty picks the command's default
  int n = 4;
  int max_n = 6;
  std::string s = "(x, y, z)";
  std::string t = "(y, x, z)";
  std::string ambient = "0 < x < y < z";
  bool weak = false;
  bool cross_check = false;
  std::string replay;

  // minimize
  std::string objective = "delta";  // delta | level
  bool cap = false;
  std::optional<std::uint64_t> node_budget;
  std::string export_lp;
  std::int64_t box = 1000;

  // heatmap
  std::int64_t total = 2000;

  // simulate
  std::int64_t x = 4, y = 5, z = 6;
  std::uint64_t seed = 1;
  std::uint64_t trials = 1000000;
  int max_rounds = 64;
  bool ordering = false;

  // selfcheck
  bool inject_fault = false;

  int threads = 0;
  std::string out;
};

/// Runs the certification pipeline without writing anything.
/// Throws std::invalid_argument on bad input and CrossCheckError on disagreement.
Certificate certify(const Request& req);

class CrossCheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes the CSV for every lattice point 0 < x < y < z with x + y + z = total.
/// Throws std::invalid_argument for total < 6 or n < 1.
void write_heatmap(std::ostream& os, std::int64_t total, int n, const Substitution& s,
                   const Substitution& t, int threads = 0);

inline constexpr const char* kHeatmapHeader = "x,y,z,delta_minus_alpha,delta_minus_alpha_decimal";

int cmd_certify(const Request& req, std::ostream& out, std::ostream& err);
int cmd_meshitup(const Request& req, std::ostream& out, std::ostream& err);
int cmd_minimize(const Request& req, std::ostream& out, std::ostream& err);
int cmd_heatmap(const Request& req, std::ostream& out, std::ostream& err);
int cmd_simulate(const Request& req, std::ostream& out, std::ostream& err);
int cmd_selfcheck(const Request& req, std::ostream& out, std::ostream& err);
int cmd_conjecture(const Request& req, std::ostream& out, std::ostream& err);

/// Dispatches on req.command; input errors map to kExitInputError.
int run_command(const Request& req, std::ostream& out, std::ostream& err);

}  // namespace allin
