#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qsdpnal/generators.hpp"
#include "qsdpnal/io.hpp"
#include "qsdpnal/solver.hpp"

using namespace qsdpnal;

namespace {

constexpr int kExitConverged = 0;
constexpr int kExitNotConverged = 1;
constexpr int kExitUsage = 2;

struct GenerateArgs {
  std::string family;
  std::string out;
  std::uint64_t seed = 1;
  std::uint64_t corr_seed = 7;
  // ncm
  Index n = 50;
  double alpha = 0.1;
  std::string weight = "uniform";
  double weight_lo = 0.1;
  double weight_hi = 10.0;
  std::string cone = "whole";
  double box_lower = -0.5;
  // biq / qap
  Index l = 10;
  double density = 0.5;
  std::string from;
  // snl
  int d = 2;
  double radius = 0.5;
  double noise = 0.1;
  double lambda = 1e-2;
  bool inequalities = false;
};

struct SolveArgs {
  std::string instance;
  std::string solution_out;
  std::string report_out;
  double tol = 1e-6;
  bool phase1_only = false;
  int max_iters = -1;
  int max_outer = -1;
  double sigma0 = 1.0;
  double tau = 1.618;
  double eta = 1e-6;
  std::uint64_t seed = 0;
  bool history = false;
  int verbose = 0;
};

QsdpProblem generate(const GenerateArgs& a) {
  if (a.family == "ncm") {
    NcmWeight w = a.weight == "block" ? NcmWeight::block_pattern(a.seed + 1)
                                      : NcmWeight::uniform(a.weight_lo,
                                                           a.weight_hi);
    if (a.weight != "block" && a.weight != "uniform")
      fail(ErrorCode::InvalidConfig, "--weight must be uniform or block");
    PolyhedralSet k;
    if (a.cone == "box")
      k = PolyhedralSet::box(a.n, a.box_lower,
                             std::numeric_limits<double>::infinity());
    else if (a.cone != "whole")
      fail(ErrorCode::InvalidConfig, "--K must be whole or box");
    return gen_ncm(a.n, a.alpha, w, k, a.seed);
  }
  if (a.family == "biq") {
    const BiqData d =
        a.from.empty() ? random_biq_data(a.l, a.density, a.seed) : load_biq(a.from);
    return gen_biq(d, a.corr_seed);
  }
  if (a.family == "qap") {
    const QapData d = a.from.empty() ? random_qap_data(a.l, a.seed) : load_qap(a.from);
    return gen_qap(d, a.corr_seed);
  }
  if (a.family == "snl") {
    SnlParams p;
    p.d = a.d;
    p.l = a.l;
    p.R = a.radius;
    p.tau_noise = a.noise;
    p.lambda = a.lambda;
    p.with_inequalities = a.inequalities;
    p.seed = a.seed;
    return gen_snl(p);
  }
  fail(ErrorCode::InvalidConfig,
       "unknown family '" + a.family + "' (expected ncm, biq, qap or snl)");
}

int run_solve(const SolveArgs& a) {
  const QsdpProblem p = read_instance(read_file(a.instance));
  SolverConfig cfg;
  cfg.tol = a.tol;
  cfg.phase1_only = a.phase1_only;
  cfg.phase1.sigma = a.sigma0;
  cfg.phase1.tau = a.tau;
  cfg.alm.sigma0 = a.sigma0;
  cfg.alm.abcd.eta = a.eta;
  if (a.max_iters > 0) {
    cfg.phase1.max_iters = a.max_iters;
    cfg.phase1_only_iters = a.max_iters;
  }
  if (a.max_outer >= 0) cfg.max_total_outer = a.max_outer;
  cfg.record_history = a.history;
  if (a.verbose > 0) {
    cfg.alm.verbose = a.verbose;
    cfg.phase1.verbose_every = 100;
  }
  const SolveReport rep = qsdpnal_solve(p, cfg);
  const std::string report = write_report(rep, a.history);
  if (a.report_out.empty())
    std::cout << report;
  else
    write_file(a.report_out, report);
  if (!a.solution_out.empty())
    write_file(a.solution_out, write_solution(rep.solution));
  return rep.converged ? kExitConverged : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-phase augmented Lagrangian solver for convex QSDP"};
  app.require_subcommand(1);

  GenerateArgs ga;
  CLI::App* gen = app.add_subcommand("generate", "Write a test instance");
  gen->add_option("family", ga.family, "ncm, biq, qap or snl")->required();
  gen->add_option("-o,--out", ga.out, "Output instance path")->required();
  gen->add_option("--seed", ga.seed, "Instance seed");
  gen->add_option("--corr-seed", ga.corr_seed, "Seed of the Q factors (biq, qap)");
  gen->add_option("--n", ga.n, "Matrix order (ncm)");
  gen->add_option("--alpha", ga.alpha, "Perturbation level in (0,1) (ncm)");
  gen->add_option("--weight", ga.weight, "uniform or block (ncm)");
  gen->add_option("--weight-lo", ga.weight_lo, "Uniform weight lower bound");
  gen->add_option("--weight-hi", ga.weight_hi, "Uniform weight upper bound");
  gen->add_option("--K", ga.cone, "whole or box (ncm)");
  gen->add_option("--box-lower", ga.box_lower, "Entry lower bound for --K box");
  gen->add_option("--l", ga.l, "Problem size (biq, qap, snl sensors)");
  gen->add_option("--density", ga.density, "Nonzero density (biq)");
  gen->add_option("--from", ga.from, "Biq Mac or QAPLIB data file");
  gen->add_option("--d", ga.d, "Embedding dimension 2 or 3 (snl)");
  gen->add_option("--R", ga.radius, "Radio range (snl)");
  gen->add_option("--noise", ga.noise, "Noise factor tau (snl)");
  gen->add_option("--lambda", ga.lambda, "Regularization weight (snl)");
  gen->add_flag("--inequalities", ga.inequalities, "Add two-hop cuts (snl)");

  SolveArgs sa;
  CLI::App* sol = app.add_subcommand("solve", "Solve an instance");
  sol->add_option("instance", sa.instance, "Instance path")->required();
  sol->add_option("--tol", sa.tol, "Target KKT residual");
  sol->add_flag("--phase1-only", sa.phase1_only, "Skip Phase II");
  sol->add_option("--max-iters", sa.max_iters, "Phase I iteration cap");
  sol->add_option("--max-outer", sa.max_outer, "Phase II outer iteration cap");
  sol->add_option("--sigma0", sa.sigma0, "Initial penalty parameter");
  sol->add_option("--tau", sa.tau, "Phase I dual step length");
  sol->add_option("--seed", sa.seed, "Accepted for scripting; the solver is deterministic");
  sol->add_option("--eta", sa.eta, "Proximal weight of the inner block method");
  sol->add_flag("--history", sa.history, "Include per-iteration tables");
  sol->add_flag("-v,--verbose", sa.verbose, "Progress lines on stderr (repeat for detail)");
  sol->add_option("--solution", sa.solution_out, "Write the solution here");
  sol->add_option("--report", sa.report_out, "Write the report here instead of stdout");

  std::string chk_instance, chk_solution;
  CLI::App* chk = app.add_subcommand("check", "Recompute KKT residuals");
  chk->add_option("instance", chk_instance, "Instance path")->required();
  chk->add_option("solution", chk_solution, "Solution path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) {
      write_file(ga.out, write_instance(generate(ga)));
      return 0;
    }
    if (*sol) return run_solve(sa);
    if (*chk) {
      const QsdpProblem p = read_instance(read_file(chk_instance));
      const Solution s = read_solution(read_file(chk_solution), p);
      const KktReport r = kkt_residuals(p, s);
      std::cout << write_kkt(r);
      return certify(r, 1e-6) ? kExitConverged : kExitNotConverged;
    }
  } catch (const Error& e) {
    std::cerr << "qsdpnal: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
