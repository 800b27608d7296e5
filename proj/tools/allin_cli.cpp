// allin-cert: certification and exploration front end.

#include "allin/commands.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

void common_flags(CLI::App* sub, allin::Request& req) {
  sub->add_option("--n", req.n, "Recursion depth");
  sub->add_option("--method", req.method, "oracle, milp or decomposed");
  sub->add_option("--threads", req.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", req.seed, "Random seed");
  sub->add_option("--trials", req.trials, "Simulated episodes");
  sub->add_option("--max-rounds", req.max_rounds, "Round cap per episode");
  sub->add_option("--out", req.out, "Output file");
  sub->add_flag("--weak", req.weak, "Accept min Delta_n >= alpha_n");
  sub->add_flag("--cross-check", req.cross_check, "Compare all methods and abort on disagreement");
}

void problem_flags(CLI::App* sub, allin::Request& req) {
  sub->add_option("--s", req.s, "Substitution for the first sum, e.g. \"(x, y, z)\"");
  sub->add_option("--t", req.t, "Substitution for the second sum, e.g. \"(y, x, z)\"");
  sub->add_option("--ambient", req.ambient, "Homogeneous constraints, e.g. \"0 < x < y < z\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certification of the three-player all-in swap inequality"};
  app.require_subcommand(1);
  allin::Request req;

  auto* certify = app.add_subcommand("certify", "Certify a lemma or the theorem and emit a certificate");
  common_flags(certify, req);
  certify->add_option("--claim", req.claim, "lemma-xy, lemma-yz, theorem-1 or custom");
  certify->add_option("--replay", req.replay, "Recompute a stored certificate and compare");
  problem_flags(certify, req);

  auto* mesh = app.add_subcommand("meshitup", "Refine n until min Delta_n exceeds alpha_n");
  common_flags(mesh, req);
  problem_flags(mesh, req);
  mesh->add_option("--max-n", req.max_n, "Largest n to try");

  auto* minimize = app.add_subcommand("minimize", "Exact minimum of Delta_n - alpha_n or of a level difference");
  common_flags(minimize, req);
  problem_flags(minimize, req);
  minimize->add_option("--objective", req.objective, "delta or level");
  minimize->add_flag("--cap", req.cap, "Add the row objective <= 0");
  minimize->add_option("--node-budget", req.node_budget, "Stop after this many nodes");
  minimize->add_option("--export-lp", req.export_lp, "Write the big-M model in LP format");
  minimize->add_option("--box", req.box, "Variable box for big-M export")->check(CLI::PositiveNumber);

  auto* heatmap = app.add_subcommand("heatmap", "CSV of Delta_n - alpha_n on the lattice x + y + z = total");
  common_flags(heatmap, req);
  heatmap->add_option("--total", req.total, "Lattice sum");
  heatmap->add_option("--s", req.s, "Substitution for the first sum");
  heatmap->add_option("--t", req.t, "Substitution for the second sum");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run from a starting state");
  common_flags(simulate, req);
  simulate->add_option("--x", req.x, "Stack of player 1");
  simulate->add_option("--y", req.y, "Stack of player 2");
  simulate->add_option("--z", req.z, "Stack of player 3");
  simulate->add_flag("--ordering", req.ordering, "Also compare f(x,y,z), f(y,x,z), f(z,x,y)");

  auto* selfcheck = app.add_subcommand("selfcheck", "Cross-validate the engines against each other");
  common_flags(selfcheck, req);
  selfcheck->add_flag("--inject-fault", req.inject_fault, "Flip one indicator sign before the MILP check");

  auto* conjecture = app.add_subcommand("conjecture", "Explore f(x,y,z) > f(y,y,z)");
  common_flags(conjecture, req);
  conjecture->add_option("--max-n", req.max_n, "Largest n to try");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return allin::kExitInputError;
  }
  req.command = app.get_subcommands().front()->get_name();
  return allin::run_command(req, std::cout, std::cerr);
}
