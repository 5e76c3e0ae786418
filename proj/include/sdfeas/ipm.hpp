#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sdfeas/embed.hpp"
#include "sdfeas/errors.hpp"
#include "sdfeas/newton.hpp"
#include "sdfeas/sdlcp.hpp"

namespace sdfeas {

enum class StepRule {
  Greedy,        // ᾱ = α₂
  Conservative,  // ᾱ = α₁
};

struct Params {
  double beta1 = 0.1;
  double beta2 = 0.3;
  double eps = 1e-8;
  double eps_tau = 1e-8;
  double mu_floor = 1e-12;
  int max_iter = 200;
  double bisect_tol = 1e-12;
  StepRule rule = StepRule::Greedy;

  /// β₂²/(2(1−β₂)²) ≤ β₁ < β₂ < β₂/(1−β₂) < 1 plus positivity of the tolerances.
  void validate() const;
};

struct TraceRow {
  int k = 0;
  double mu = 0.0;
  double alpha_bar = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double delta = 0.0;
  double tau = 0.0;
  double kappa = 0.0;
  double norm_r = 0.0;
  double norm_s = 0.0;
  double gamma = 0.0;
  double nbr_dist = 0.0;
  double ratio = 0.0;  // μ_{k+1}/μ_k

  // Diagnostics not written to the CSV.
  double pred_dist = 0.0;  // distance of the predictor output
  double pred_mu = 0.0;    // (1 − ᾱ)·μ_k
  double next_mu = 0.0;
  double next_dist = 0.0;
  bool exact_step = false;
  bool corrected = false;  // false for exact steps and for a predictor output already below mu_floor
};

using IterTrace = std::vector<TraceRow>;

/// Theory breach or numerical failure inside a run; carries the trace so far.
class RunBreach : public Error {
 public:
  RunBreach(const Error& cause, IterTrace trace, int k)
      : Error(cause.code(), cause.detail() + " (iteration " + std::to_string(k) + ")"),
        trace_(std::move(trace)),
        k_(k) {}

  const IterTrace& trace() const noexcept { return trace_; }
  int iteration() const noexcept { return k_; }

 private:
  IterTrace trace_;
  int k_;
};

struct PredictorResult {
  HPoint point;
  Direction direction;
  double alpha_bar = 0.0;
  double delta = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  bool exact = false;  // full step landed on an exact solution
};

/// 2/(√(1 + 4δ/(β₂−β₁)) + 1)
double alpha1_bound(double delta, double beta1, double beta2);

PredictorResult predictor(const Lsdfp& p, const HPoint& pt, const Params& params);

/// Centering step from the predictor output with target (1−ᾱ)·μ_prev, where
/// μ_prev is the μ of the iterate the predictor started from.
HPoint corrector(const Lsdfp& p, const HPoint& pt_bar, double alpha_bar, double mu_prev, const Params& params);

/// Return true to stop the run at iterate k.
using Observer = std::function<bool(const HPoint& pt, int k)>;

struct RunOptions {
  Observer observer;
  bool keep_iterates = false;
};

struct RunResult {
  Status status = Status::Continue;
  bool stopped = false;  // observer asked to stop
  HPoint point;
  std::optional<Solution> solution;
  IterTrace trace;
  std::vector<HPoint> iterates;  // with keep_iterates: iterates 0..K
};

RunResult run(const Lsdfp& p, const HPoint& start, const Params& params, const RunOptions& opts = {});

struct HatRunOptions {
  bool keep_iterates = false;
  /// When set, iteration k takes forced_alpha[k] as ᾱ. The hat-side α₁, α₂ are still
  /// computed and recorded; membership of the forced step is not re-tested.
  std::vector<double> forced_alpha;
};

struct HatRunResult {
  Status status = Status::Continue;
  HatPoint point;
  IterTrace trace;
  std::vector<HatPoint> iterates;
};

HatRunResult run_sdlcp(const SdlcpOps& ops, const HatPoint& start, const Params& params,
                       const HatRunOptions& opts = {});

/// Hat-side neighborhood distance with μ̂ = Tr(X̂Ŷ)/(n+1).
NeighborhoodDistance hat_neighborhood_distance(const HatPoint& hp);

struct EquivalenceReport {
  bool passed = true;
  int first_failure = -1;
  int compared = 0;
  std::vector<double> block_dev;  // per k, relative
  std::vector<double> mu_dev;     // per k, |μ̂ − μ|/μ
  std::vector<double> alpha2_dev; // per k, |α̂₂ − α₂|
};

struct EquivalenceOptions {
  double block_tol = 1e-8;
  double mu_tol = 1e-10;
  bool inject_fault = false;  // perturb one B̂ row (negative control)
};

EquivalenceReport check_equivalence(const Lsdfp& p, const HPoint& start, const Params& params, int k_max,
                                    const EquivalenceOptions& opts = {});

/// Throws EquivalenceViolation naming the first failing k.
void require_equivalence(const EquivalenceReport& rep);

struct SuperlinearReport {
  Vector tail;
  bool monotone_decreasing = false;
  double final_ratio = 0.0;
  double q_order = 0.0;  // NaN when fewer than two usable points
  bool superlinear = false;
};

SuperlinearReport superlinear_report(const IterTrace& trace, int tail);
/// Same analysis on a bare list of ratios (μ values reconstructed from μ₀ = 1).
SuperlinearReport superlinear_report(std::span<const double> ratios, int tail);

}  // namespace sdfeas
