// sdfeas: command-line front end for the semidefinite feasibility solver.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdfeas/embed.hpp"
#include "sdfeas/errors.hpp"
#include "sdfeas/io.hpp"
#include "sdfeas/ipm.hpp"
#include "sdfeas/phase1.hpp"
#include "sdfeas/problem.hpp"
#include "sdfeas/sdlcp.hpp"

using namespace sdfeas;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kNoOptimal = 2, kNotFeasible = 3, kBreach = 4 };

int exit_code(Status s) {
  switch (s) {
    case Status::Solved:
    case Status::MuFloor: return kOk;
    case Status::NoOptimalSolution: return kNoOptimal;
    case Status::MaxIter:
    case Status::Continue: return kNotFeasible;
  }
  return kBreach;
}

bool is_input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::NonZeroCost:
    case ErrorCode::InvalidProblem:
    case ErrorCode::InvalidParams:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotSymmetric:
    case ErrorCode::ZeroRhs:
    case ErrorCode::DegenerateLmi:
    case ErrorCode::InsufficientTrace: return true;
    default: return false;
  }
}

std::string fmt(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void print_report(const IterTrace& trace, int tail, const char* label) {
  if (trace.size() < static_cast<std::size_t>(tail) + 1) {
    std::cout << label << ": trace too short for a tail of " << tail << " (" << trace.size() << " rows)\n";
    return;
  }
  const SuperlinearReport rep = superlinear_report(trace, tail);
  std::cout << label << ": final ratio " << fmt(rep.final_ratio) << ", tail";
  for (double r : rep.tail) std::cout << ' ' << fmt(r, 4);
  std::cout << (rep.monotone_decreasing ? ", monotone decreasing" : ", not monotone")
            << ", Q-order " << (std::isnan(rep.q_order) ? std::string("n/a") : fmt(rep.q_order, 4))
            << (rep.superlinear ? "" : "  [no superlinear tail]") << "\n";
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string problem;
  std::string format = "json";
  bool cold = false;
  Params params;
  double mu0 = 1.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string trace;
  std::string recover;
  int tail = 3;
};

int cmd_solve(const SolveArgs& a) {
  const Lsdfp p = io::read_problem(a.problem, a.format == "sdpa" ? io::Format::Sdpa : io::Format::Json);
  require_valid(p);
  a.params.validate();

  HPoint start;
  if (a.cold) {
    start = cold_start(p, std::sqrt(a.mu0));
  } else {
    const DualInterior di = find_dual_interior(p, 1e-3, Params{});
    if (di.status != DualInteriorStatus::Found) {
      std::cout << "status: " << to_string(di.status) << " (phase-I " << to_string(di.aux_status) << " after "
                << di.iterations << " iterations)\n";
      if (!a.out.empty()) io::write_file(a.out, io::solution_to_json(to_string(di.status), std::nullopt, 0, NAN));
      return kNotFeasible;
    }
    std::cout << "phase-I: dual interior point found after " << di.iterations << " iterations\n";
    start = centered_start(p, di.y0, di.Y0, a.mu0);
  }

  RunResult res;
  try {
    res = run(p, start, a.params);
  } catch (const RunBreach& e) {
    if (!a.trace.empty()) io::write_file(a.trace, io::trace_to_csv(e.trace()));
    if (!a.out.empty()) io::write_file(a.out, io::solution_to_json("NumericalBreach", std::nullopt,
                                                                   static_cast<int>(e.trace().size()), NAN));
    std::cerr << "numerical breach: " << e.what() << "\n";
    return kBreach;
  }

  const double final_ratio = res.trace.empty() ? NAN : res.trace.back().ratio;
  std::cout << "status: " << to_string(res.status) << "\n"
            << "iterations: " << res.trace.size() << "\n"
            << "final mu: " << fmt(res.point.mu(), 10) << "\n"
            << "final ratio: " << fmt(final_ratio) << "\n";
  print_report(res.trace, a.tail, "superlinear report");

  if (!a.out.empty())
    io::write_file(a.out, io::solution_to_json(to_string(res.status), res.solution,
                                               static_cast<int>(res.trace.size()), final_ratio));
  if (!a.trace.empty()) io::write_file(a.trace, io::trace_to_csv(res.trace));

  if (!a.recover.empty() && res.solution) {
    const Lmi lmi = io::parse_lmi_json(io::read_file(a.recover));
    const RecoveryMap map(lmi);
    const Vector z = map.recover(res.solution->X);
    std::cout << "z: " << nlohmann::json(z).dump() << "\n"
              << "lmi min eigenvalue: " << fmt(min_eigenvalue(lmi.evaluate(z)), 10) << "\n";
  }
  return exit_code(res.status);
}

// ---------------------------------------------------------------- generate

int cmd_generate(std::size_t n, std::size_t m, std::size_t r, std::uint64_t seed, const std::string& prefix) {
  if (r < 1 || r + 1 > n) {
    std::cerr << "invalid rank: need 1 <= r <= n-1\n";
    return kUsage;
  }
  if (m < 2 || m > svec_dim(n)) {
    std::cerr << "invalid m: need 2 <= m <= n(n+1)/2\n";
    return kUsage;
  }
  try {
    const GeneratedInstance g = generate(n, m, r, seed);
    io::write_file(prefix + ".json", io::problem_to_json(g.problem));
    io::write_file(prefix + ".witness.json", io::witness_to_json(g.witness));
    std::cout << "wrote " << prefix << ".json and " << prefix << ".witness.json (" << g.attempts << " attempt"
              << (g.attempts == 1 ? "" : "s") << ")\n";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::GenerationFailed) throw;
    std::cerr << e.what() << "\n";
    return kNotFeasible;
  }
  return kOk;
}

// ---------------------------------------------------------------- convert

int cmd_convert(const std::string& input, const std::string& from, const std::string& out) {
  Lsdfp p;
  if (from == "sdpa") {
    p = io::parse_sdpa(io::read_file(input));
  } else {
    p = from_lmi(io::parse_lmi_json(io::read_file(input))).problem;
  }
  require_valid(p);
  io::write_file(out, io::problem_to_json(p));
  std::cout << "wrote " << out << " (n = " << p.n << ", m = " << p.m << ")\n";
  return kOk;
}

// ---------------------------------------------------------------- verify

struct Table {
  bool all = true;
  void row(const std::string& name, const std::string& verdict, const std::string& detail = "") {
    if (verdict == "FAIL") all = false;
    std::printf("  %-34s %-7s %s\n", name.c_str(), verdict.c_str(), detail.c_str());
  }
  void check(const std::string& name, bool ok, const std::string& detail = "") { row(name, ok ? "pass" : "FAIL", detail); }
};

int cmd_verify(const std::string& problem, const std::string& format, const std::string& witness_path,
               const std::string& dump_ops, int trials) {
  const Lsdfp p = io::read_problem(problem, format == "sdpa" ? io::Format::Sdpa : io::Format::Json);
  Table t;
  const ValidationReport vr = validate(p);
  t.check("rank of constraint matrices", vr.shapes_ok && vr.rank_ok,
          "rank " + std::to_string(vr.rank) + " of m = " + std::to_string(p.m));
  t.check("right-hand side nonzero", vr.b_nonzero);
  if (!vr.valid()) {
    for (const char* name : {"orthogonal basis", "monotonicity", "existence", "surjectivity", "witness"})
      t.row(name, "skipped");
    return kBreach;
  }

  const OrthBasis basis = build_orth_basis(p);
  const double defect = orthogonality_defect(p, basis);
  t.check("orthogonal basis", defect <= 1e-10, "defect " + fmt(defect, 3));
  const SdlcpOps ops = build_ops(p, basis);
  if (!dump_ops.empty()) io::write_file(dump_ops, io::ops_to_json(ops));
  const Assumption32Report ar = check_assumption_3_2(ops, trials);
  t.check("monotonicity", ar.monotone_ok, "max |Tr(XY)|/scale " + fmt(ar.monotone_worst, 3));
  t.check("existence", ar.existence_ok);
  t.check("surjectivity", ar.surjective_ok, "rank " + std::to_string(ar.rank) + " of " + std::to_string(ar.expected_rank));

  if (witness_path.empty()) {
    t.row("witness invariants", "skipped");
    t.row("(B1)_22 block", "skipped");
    t.row("embedding, forward", "skipped");
    t.row("embedding, backward", "skipped");
  } else {
    const Witness w = io::parse_witness_json(io::read_file(witness_path));
    const WitnessDefects d = witness_defects(p, w);
    const double scale = 1.0 + frobenius_norm(w.Xstar) + frobenius_norm(w.Ystar);
    const double worst = std::max({d.primal, d.dual, d.complementarity, d.gap});
    t.check("witness invariants", worst <= 1e-10 * scale && d.min_eig_sum > 0.0,
            "max defect " + fmt(worst, 3) + ", min eig(X*+Y*) " + fmt(d.min_eig_sum, 3));
    try {
      const B122Result b = check_B1_22(basis, w);
      t.check("(B1)_22 block", true,
              b.vacuous ? "vacuous" : (b.original_ok ? "norm " : "adjusted, norm ") + fmt(b.block_norm, 3));
    } catch (const Error& e) {
      t.check("(B1)_22 block", false, e.what());
    }

    HPoint sol{w.Xstar, w.ystar, w.Ystar, 1.0, 0.0};
    const HatPoint hp = embed(sol);
    const double lin = max_abs(ops.residual(hp.Xhat, hp.Yhat));
    const double comp = frobenius_norm(hp.Xhat * hp.Yhat);
    t.check("embedding, forward", lin <= 1e-10 * scale && comp <= 1e-10 * scale,
            "linear " + fmt(lin, 3) + ", complementarity " + fmt(comp, 3));
    const BlockParts back = extract(hp);
    HPoint pulled{back.X, w.ystar, back.Y, back.tau, back.kappa};
    const Residuals res = residuals(p, pulled);
    const double hom = std::max({max_abs(res.r), frobenius_norm(res.s), std::abs(res.gamma)});
    t.check("embedding, backward", hom <= 1e-10 * scale, "homogeneous residual " + fmt(hom, 3));
  }
  return t.all ? kOk : kBreach;
}

// ---------------------------------------------------------------- compare

int cmd_compare(const std::string& problem, const std::string& format, int k_max, bool cold, bool inject) {
  const Lsdfp p = io::read_problem(problem, format == "sdpa" ? io::Format::Sdpa : io::Format::Json);
  require_valid(p);
  HPoint start;
  if (cold) {
    start = cold_start(p, 1.0);
  } else {
    const DualInterior di = find_dual_interior(p);
    if (di.status != DualInteriorStatus::Found) {
      std::cout << "phase-I: " << to_string(di.status) << "\n";
      return kNotFeasible;
    }
    start = centered_start(p, di.y0, di.Y0, 1.0);
  }
  EquivalenceOptions opts;
  opts.inject_fault = inject;
  const EquivalenceReport rep = check_equivalence(p, start, Params{}, k_max, opts);
  std::printf("%4s  %-14s %-14s %-14s\n", "k", "block_dev", "mu_dev", "alpha2_dev");
  for (std::size_t k = 0; k < rep.block_dev.size(); ++k)
    std::printf("%4zu  %-14.3e %-14.3e %-14s\n", k, rep.block_dev[k], rep.mu_dev[k],
                k < rep.alpha2_dev.size() ? fmt(rep.alpha2_dev[k], 3).c_str() : "-");
  if (!rep.passed) {
    std::cout << "EquivalenceViolation at k = " << rep.first_failure << "\n";
    return kBreach;
  }
  std::cout << "equivalent over " << rep.compared << " iterates\n";
  return kOk;
}

// ---------------------------------------------------------------- report

int cmd_report(const std::string& trace_path, int tail, const std::string& other) {
  const IterTrace trace = io::parse_trace_csv(io::read_file(trace_path));
  if (trace.size() < static_cast<std::size_t>(tail) + 1)
    throw Error(ErrorCode::InsufficientTrace, "trace has " + std::to_string(trace.size()) + " rows, tail needs " +
                                                  std::to_string(tail + 1));
  // Ratios are recomputed from the μ column; the last row keeps its recorded ratio.
  IterTrace fixed = trace;
  for (std::size_t k = 0; k + 1 < fixed.size(); ++k) fixed[k].ratio = fixed[k + 1].mu / fixed[k].mu;

  std::printf("%5s  %-14s %-12s %-12s\n", "k", "mu", "alpha_bar", "ratio");
  for (std::size_t k = fixed.size() - static_cast<std::size_t>(tail); k < fixed.size(); ++k)
    std::printf("%5d  %-14.6e %-12.6g %-12.6g\n", fixed[k].k, fixed[k].mu, fixed[k].alpha_bar, fixed[k].ratio);
  print_report(fixed, tail, "trace");

  if (!other.empty()) {
    IterTrace second = io::parse_trace_csv(io::read_file(other));
    for (std::size_t k = 0; k + 1 < second.size(); ++k) second[k].ratio = second[k + 1].mu / second[k].mu;
    print_report(second, tail, "second trace");
    std::cout << "iterations: " << fixed.size() << " vs " << second.size() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semidefinite feasibility solver (homogeneous predictor-corrector, dual HKM)"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve a feasibility problem");
  solve->add_option("problem", sa.problem, "Problem file")->required();
  solve->add_option("--format", sa.format, "Input format")->check(CLI::IsMember({"json", "sdpa"}));
  solve->add_flag("--cold", sa.cold, "Start from X = Y = I instead of the phase-I warm start");
  solve->add_option("--beta1", sa.params.beta1, "Inner neighborhood radius");
  solve->add_option("--beta2", sa.params.beta2, "Outer neighborhood radius");
  solve->add_option("--eps", sa.params.eps, "Solution tolerance");
  solve->add_option("--eps-tau", sa.params.eps_tau, "Infeasibility threshold on tau");
  solve->add_option("--mu-floor", sa.params.mu_floor, "Stop once mu falls below this value");
  solve->add_option("--mu0", sa.mu0, "Initial mu");
  solve->add_option("--max-iter", sa.params.max_iter, "Iteration cap");
  solve->add_option("--seed", sa.seed, "Seed (solve itself is deterministic)");
  solve->add_option("--out", sa.out, "Solution JSON path");
  solve->add_option("--trace", sa.trace, "Trace CSV path");
  solve->add_option("--tail", sa.tail, "Ratios in the superlinear summary")->check(CLI::PositiveNumber);
  solve->add_option("--recover", sa.recover, "LMI JSON to recover z from the solution");

  std::size_t gn = 0, gm = 0, gr = 0;
  std::uint64_t gseed = 0;
  std::string gout;
  auto* gen = app.add_subcommand("generate", "Generate an instance with a strictly complementary witness");
  gen->add_option("--n", gn, "Matrix dimension")->required();
  gen->add_option("--m", gm, "Number of constraints")->required();
  gen->add_option("--r", gr, "Rank of X*")->required();
  gen->add_option("--seed", gseed, "Random seed")->required();
  gen->add_option("--out", gout, "Output prefix")->required();

  std::string cin_path, cfrom = "sdpa", cout_path;
  auto* conv = app.add_subcommand("convert", "Convert SDPA or LMI input to problem JSON");
  conv->add_option("input", cin_path, "Input file")->required();
  conv->add_option("--from", cfrom, "Input kind")->check(CLI::IsMember({"sdpa", "lmi"}));
  conv->add_option("--out", cout_path, "Output problem JSON")->required();

  std::string vprob, vformat = "json", vwit, vdump;
  int vtrials = 20;
  auto* ver = app.add_subcommand("verify", "Check structural assumptions of an instance");
  ver->add_option("problem", vprob, "Problem file")->required();
  ver->add_option("--format", vformat, "Input format")->check(CLI::IsMember({"json", "sdpa"}));
  ver->add_option("--witness", vwit, "Witness sidecar JSON");
  ver->add_option("--dump-ops", vdump, "Write the SDLCP operator rows as JSON");
  ver->add_option("--trials", vtrials, "Monotonicity samples")->check(CLI::PositiveNumber);

  std::string kprob, kformat = "json";
  int kmax = 15;
  bool kcold = false, kfault = false;
  auto* cmp = app.add_subcommand("compare", "Run both algorithm forms and compare iterates");
  cmp->add_option("problem", kprob, "Problem file")->required();
  cmp->add_option("--format", kformat, "Input format")->check(CLI::IsMember({"json", "sdpa"}));
  cmp->add_option("--k-max", kmax, "Iterations to compare")->check(CLI::NonNegativeNumber);
  cmp->add_flag("--cold", kcold, "Use the cold start");
  cmp->add_flag("--inject-fault", kfault)->group("");

  std::string rtrace, rother;
  int rtail = 3;
  auto* rep = app.add_subcommand("report", "Summarize a trace CSV");
  rep->add_option("trace", rtrace, "Trace CSV")->required();
  rep->add_option("--tail", rtail, "Number of trailing ratios")->check(CLI::PositiveNumber);
  rep->add_option("--against", rother, "Second trace for a warm-vs-cold comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(sa);
    if (*gen) return cmd_generate(gn, gm, gr, gseed, gout);
    if (*conv) return cmd_convert(cin_path, cfrom, cout_path);
    if (*ver) return cmd_verify(vprob, vformat, vwit, vdump, vtrials);
    if (*cmp) return cmd_compare(kprob, kformat, kmax, kcold, kfault);
    if (*rep) return cmd_report(rtrace, rtail, rother);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? kUsage : kBreach;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBreach;
  }
  return kUsage;
}
