// Desk-scale acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sdfeas/ipm.hpp"
#include "sdfeas/newton.hpp"
#include "sdfeas/phase1.hpp"
#include "sdfeas/sdlcp.hpp"
#include "support.hpp"

using namespace sdtest;

namespace {

int failures = 0;

void verdict(int id, bool ok, const char* name, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("[%d] %s  %-26s %s\n", id, ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

HPoint warm_start(const Lsdfp& p) {
  const DualInterior di = find_dual_interior(p);
  if (di.status != DualInteriorStatus::Found) throw Error(ErrorCode::NotDualFeasible, "phase-I: " + to_string(di.status));
  return centered_start(p, di.y0, di.Y0, 1.0);
}

struct Progress {
  int runs = 0;
  int bad_rows = 0;
  double worst_rel = 0.0;
  double worst_rel_early = 0.0;  // rows with μ_{k+1} ≥ 1e-6
  double largest_bad_mu = 0.0;
};

// μ_{k+1} = (1−ᾱ_k)μ_k and μ_{k+1} < μ_k along one trace.
void record_progress(const IterTrace& t, Progress& pr) {
  ++pr.runs;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double next = k + 1 < t.size() ? t[k + 1].mu : t[k].next_mu;
    const double want = (1.0 - t[k].alpha_bar) * t[k].mu;
    const double rel = want > 0.0 ? std::abs(next - want) / want : std::abs(next);
    pr.worst_rel = std::max(pr.worst_rel, rel);
    if (next >= 1e-6) pr.worst_rel_early = std::max(pr.worst_rel_early, rel);
    if (rel > 1e-9 || !(next < t[k].mu)) {
      ++pr.bad_rows;
      pr.largest_bad_mu = std::max(pr.largest_bad_mu, next);
    }
  }
}

void newton_plug_back() {
  Rng rng(1001);
  double worst_h = 0.0, worst_hat = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Shape sh = shape_for(t);
    const Lsdfp p = random_instance(sh.n, sh.m, rng);
    const InteriorDraw d = random_interior(p, rng);
    const double sigma = uniform(rng, 0.0, 1.0);
    Vector rbar(p.m);
    for (double& v : rbar) v = gauss(rng);
    const SymMat sbar = random_sym(p.n, rng);
    const double gbar = gauss(rng);
    const Direction dir = solve_direction(p, d.pt, sigma, rbar, sbar, gbar);
    worst_h = std::max(worst_h, plug_back(p, d.pt, d.root, sigma * d.pt.mu(), rbar, sbar, gbar, dir).worst());

    const SdlcpOps ops = build_ops(p);
    const SymMat root = random_spd(p.n + 1, rng, 0.7, 1.4);
    const HatPoint hp{random_spd(p.n + 1, rng), SymMat::symmetric_part(root * root)};
    Vector hr(ops.dim);
    for (double& v : hr) v = gauss(rng);
    const double hsigma = uniform(rng, 0.0, 1.0);
    const HatDirection hd = solve_hat_direction(ops, hp, hsigma, hr);
    worst_hat = std::max(worst_hat, plug_back_hat(ops, hp, root, hsigma * hp.mu(), hr, hd).worst());
  }
  verdict(1, worst_h <= 1e-9 && worst_hat <= 1e-9, "newton plug-back",
          fmt("100 draws, worst relative residual %.2e (homogeneous), %.2e (hat); limit 1e-9", worst_h, worst_hat));
}

void neighborhoods_and_progress(Progress& progress) {
  const Params prm;
  int violations = 0, breaches = 0, solved = 0;
  double worst_inner = 0.0, worst_outer = 0.0;
  for (int s = 0; s < 50; ++s) {
    const GeneratedInstance g = generated_instance(s, 2000);
    try {
      const RunResult res = run(g.problem, warm_start(g.problem), prm);
      if (res.solution) {
        ++solved;
        record_progress(res.trace, progress);
      }
      for (const TraceRow& r : res.trace) {
        worst_inner = std::max(worst_inner, r.nbr_dist / (prm.beta1 * r.mu));
        worst_outer = std::max(worst_outer, r.pred_dist / (prm.beta2 * r.pred_mu));
        if (r.nbr_dist > prm.beta1 * r.mu) ++violations;
        if (r.pred_mu > 0.0 && r.pred_dist > prm.beta2 * r.pred_mu) ++violations;
        if (r.corrected && r.next_dist > prm.beta1 * r.next_mu) ++violations;
      }
    } catch (const Error& e) {
      ++breaches;
      std::printf("    slot %d: %s\n", s, e.what());
    }
  }
  verdict(2, violations == 0 && breaches == 0, "neighborhood invariance",
          fmt("50 warm runs (%d with a solution), %d violations, %d breaches; worst dist/(beta mu) %.3f inner, %.3f outer",
              solved, violations, breaches, worst_inner, worst_outer));
}

void equivalence() {
  int passed = 0;
  double worst_block = 0.0, worst_mu = 0.0, early_block = 0.0, early_mu = 0.0, largest_bad_mu = 0.0;
  std::string first;
  for (int s = 0; s < 20; ++s) {
    const GeneratedInstance g = generated_instance(s, 3000);
    try {
      const HPoint start = warm_start(g.problem);
      const EquivalenceReport rep = check_equivalence(g.problem, start, Params{}, 15);
      Params capped;
      capped.max_iter = 15;
      RunOptions keep;
      keep.keep_iterates = true;
      const RunResult base = run(g.problem, start, capped, keep);
      for (std::size_t k = 0; k < rep.block_dev.size(); ++k) {
        const double mu = base.iterates[k].mu();
        worst_block = std::max(worst_block, rep.block_dev[k]);
        worst_mu = std::max(worst_mu, rep.mu_dev[k]);
        if (mu >= 1e-6) {
          early_block = std::max(early_block, rep.block_dev[k]);
          early_mu = std::max(early_mu, rep.mu_dev[k]);
        }
        if (rep.block_dev[k] > 1e-8 || rep.mu_dev[k] > 1e-10) largest_bad_mu = std::max(largest_bad_mu, mu);
      }
      if (rep.passed) {
        ++passed;
      } else if (first.empty()) {
        first = fmt(", first failure slot %d at k = %d", s, rep.first_failure);
      }
    } catch (const Error& e) {
      std::printf("    slot %d: %s\n", s, e.what());
    }
  }
  const GeneratedInstance g = generated_instance(0, 3000);
  EquivalenceOptions fault;
  fault.inject_fault = true;
  const bool control_failed = !check_equivalence(g.problem, warm_start(g.problem), Params{}, 15, fault).passed;
  verdict(3, passed == 20 && control_failed, "algorithm equivalence",
          fmt("%d/20 instances within tolerance, worst block %.2e (limit 1e-8), worst mu %.2e (limit 1e-10)%s; "
              "at mu_k >= 1e-6: block %.2e, mu %.2e; largest mu_k at a failing k %.2e; fault control %s",
              passed, worst_block, worst_mu, first.c_str(), early_block, early_mu, largest_bad_mu,
              control_failed ? "failed as required" : "PASSED"));
}

void sdlcp_structure() {
  int bad = 0;
  double worst_mono = 0.0, worst_orth = 0.0;
  for (int s = 0; s < 50; ++s) {
    const GeneratedInstance g = generated_instance(s, 4000);
    const OrthBasis basis = build_orth_basis(g.problem);
    const double orth = orthogonality_defect(g.problem, basis);
    const SdlcpOps ops = build_ops(g.problem, basis);
    const Assumption32Report rep = check_assumption_3_2(ops, 50, 4000 + static_cast<std::uint64_t>(s));
    worst_mono = std::max(worst_mono, rep.monotone_worst);
    worst_orth = std::max(worst_orth, orth);
    if (rep.monotone_worst > 1e-10 || rep.rank != svec_dim(g.problem.n + 1) || orth > 1e-10 || !rep.passed()) ++bad;
  }
  verdict(4, bad == 0, "sdlcp structure",
          fmt("50 instances, %d failing; worst |Tr(XY)|/scale %.2e, worst orthogonality defect %.2e", bad, worst_mono,
              worst_orth));
}

void superlinear_tail(Progress& progress) {
  Params prm;
  prm.eps = 1e-15;
  prm.eps_tau = 1e-15;
  prm.mu_floor = 1e-12;
  int ok = 0, reached = 0, monotone = 0, small = 0;
  double worst_final = 0.0;
  for (int s = 0; s < 20; ++s) {
    const GeneratedInstance g = generated_instance(s, 5000);
    try {
      const RunResult res = run(g.problem, warm_start(g.problem), prm);
      if (res.trace.size() < 4) continue;
      const double last_mu = res.trace.back().next_mu;
      const bool r = last_mu <= 1e-12;
      const SuperlinearReport rep = superlinear_report(res.trace, 3);
      record_progress(res.trace, progress);
      reached += r;
      monotone += rep.monotone_decreasing;
      small += rep.final_ratio <= 0.05;
      worst_final = std::max(worst_final, rep.final_ratio);
      if (r && rep.monotone_decreasing && rep.final_ratio <= 0.05) ++ok;
    } catch (const Error& e) {
      std::printf("    slot %d: %s\n", s, e.what());
    }
  }
  verdict(5, ok == 20, "superlinear tail",
          fmt("%d/20 runs pass: %d reach mu <= 1e-12, %d with the last 3 ratios strictly decreasing, %d with final "
              "ratio <= 0.05 (worst %.2e)",
              ok, reached, monotone, small, worst_final));
}

void warm_condition() {
  int warm_ok = 0, cold_fail = 0;
  for (int s = 0; s < 50; ++s) {
    const GeneratedInstance g = generated_instance(s, 2000);
    const SdlcpOps ops = build_ops(g.problem);
    warm_ok += check_condition_52(ops, embed(warm_start(g.problem)).Yhat);
    cold_fail += !check_condition_52(ops, embed(cold_start(g.problem)).Yhat);
  }
  verdict(6, warm_ok == 50 && cold_fail == 50, "warm-start condition",
          fmt("%d/50 warm starts pass, %d/50 cold starts fail", warm_ok, cold_fail));
}

void infeasibility() {
  int ok = 0, worst_iters = 0;
  double worst_tau = 0.0;
  for (int s = 0; s < 10; ++s) {
    Rng rng(7000 + static_cast<std::uint64_t>(s));
    const Shape sh = shape_for(s);
    Lsdfp p = random_instance(sh.n, sh.m, rng);
    p.A[0] = SymMat::identity(sh.n);
    p.b[0] = -1.0;
    try {
      const RunResult res = run(p, warm_start(p), Params{});
      const int iters = static_cast<int>(res.trace.size());
      worst_iters = std::max(worst_iters, iters);
      worst_tau = std::max(worst_tau, res.point.tau);
      if (res.status == Status::NoOptimalSolution && res.point.tau <= 1e-8 && iters <= 200) ++ok;
      else std::printf("    seed %d: %s, tau %.2e after %d iterations\n", s, to_string(res.status).c_str(), res.point.tau, iters);
    } catch (const Error& e) {
      std::printf("    seed %d: %s\n", s, e.what());
    }
  }
  verdict(7, ok == 10, "infeasibility dichotomy",
          fmt("%d/10 seeds end NoOptimalSolution; worst tau %.2e, most iterations %d", ok, worst_tau, worst_iters));
}

void kernels() {
  Rng rng(9001);
  int roundtrip_bad = 0;
  double worst_ip = 0.0, worst_sq = 0.0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
    const SymMat x = random_sym(n, rng), y = random_sym(n, rng);
    if (!(smat(svec(x)) == x)) ++roundtrip_bad;
    const double ip = dense_trace_product(x, y);
    worst_ip = std::max(worst_ip, std::abs(dot(svec(x), svec(y)) - ip) / std::max(1.0, frobenius_norm(x) * frobenius_norm(y)));
    std::vector<double> lam(n);
    for (double& v : lam) v = std::pow(10.0, uniform(rng, -3.0, 1.0));
    const SymMat psd = spectral(random_orthogonal(n, rng), lam);
    const SymMat r = psd_sqrt(psd).root;
    worst_sq = std::max(worst_sq, fro(r * r - psd.dense()) / frobenius_norm(psd));
  }
  verdict(9, roundtrip_bad == 0 && worst_ip <= 1e-12 && worst_sq <= 1e-10, "kernel identities",
          fmt("500 cases: %d inexact svec/smat roundtrips, worst inner-product error %.2e (limit 1e-12), worst "
              "square defect %.2e (limit 1e-10)",
              roundtrip_bad, worst_ip, worst_sq));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  Progress progress;
  newton_plug_back();
  neighborhoods_and_progress(progress);
  equivalence();
  sdlcp_structure();
  superlinear_tail(progress);
  warm_condition();
  infeasibility();
  verdict(8, progress.bad_rows == 0, "global progress",
          fmt("%d successful runs, %d rows off; worst |mu_next - (1 - alpha) mu|/mu %.2e (limit 1e-9), %.2e "
              "where mu_next >= 1e-6; largest mu_next on a failing row %.2e",
              progress.runs, progress.bad_rows, progress.worst_rel, progress.worst_rel_early, progress.largest_bad_mu));
  kernels();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d failing, %.1f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
