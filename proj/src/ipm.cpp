#include "sdfeas/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "sdfeas/errors.hpp"

namespace sdfeas {

void Params::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidParams, what); };
  if (!(beta1 > 0.0) || !(beta2 > 0.0)) fail("beta1 and beta2 must be positive");
  const double lower = beta2 * beta2 / (2.0 * (1.0 - beta2) * (1.0 - beta2));
  if (!(lower <= beta1)) fail("beta2^2/(2(1-beta2)^2) <= beta1 violated");
  if (!(beta1 < beta2)) fail("beta1 < beta2 violated");
  if (!(beta2 / (1.0 - beta2) < 1.0) || !(beta2 < beta2 / (1.0 - beta2))) fail("beta2 < beta2/(1-beta2) < 1 violated");
  if (!(eps > 0.0) || !(eps_tau > 0.0)) fail("tolerances must be positive");
  if (!(mu_floor >= 0.0)) fail("mu_floor must be non-negative");
  if (max_iter < 0) fail("max_iter must be non-negative");
  if (!(bisect_tol > 0.0) || !(bisect_tol < 1.0)) fail("bisect_tol must lie in (0, 1)");
}

double alpha1_bound(double delta, double beta1, double beta2) {
  return 2.0 / (std::sqrt(1.0 + 4.0 * delta / (beta2 - beta1)) + 1.0);
}

namespace {

bool nearly_psd(const SymMat& x) { return min_eigenvalue(x) >= -1e-12 * (1.0 + frobenius_norm(x)); }

// ---------------------------------------------------------------- models

struct HomogeneousModel {
  using Point = HPoint;
  using Dir = Direction;

  const Lsdfp& p;
  const Params& prm;

  double mu(const Point& pt) const { return pt.mu(); }
  NeighborhoodDistance dist(const Point& pt) const { return neighborhood_distance(pt); }
  bool interior(const Point& pt) const { return is_interior(pt); }

  Dir predictor_dir(const Point& pt) const {
    const Residuals res = residuals(p, pt);
    return solve_direction_centered(p, pt, 0.0, res.r, res.s, res.gamma);
  }
  Dir corrector_dir(const Point& pt, double center) const {
    return solve_direction_centered(p, pt, center, Vector(p.m, 0.0), SymMat(p.n), 0.0);
  }
  Point step(const Point& pt, const Dir& d, double a) const {
    Point q = pt;
    q.X.axpy(a, d.dX);
    for (std::size_t i = 0; i < q.y.size(); ++i) q.y[i] += a * d.dy[i];
    q.Y.axpy(a, d.dY);
    q.tau += a * d.dtau;
    q.kappa += a * d.dkappa;
    return q;
  }
  double delta(const Point& pt, const Dir& d) const { return delta_measure(pt, d); }
  Status classify_point(const Point& pt) const { return classify(p, pt, prm.eps, prm.eps_tau).status; }
  bool closed_cone(const Point& pt) const {
    return pt.tau >= 0.0 && pt.kappa >= 0.0 && nearly_psd(pt.X) && nearly_psd(pt.Y);
  }
  void fill(const Point& pt, TraceRow& row) const {
    const Residuals res = residuals(p, pt);
    row.tau = pt.tau;
    row.kappa = pt.kappa;
    row.norm_r = norm2(res.r);
    row.norm_s = frobenius_norm(res.s);
    row.gamma = res.gamma;
  }
};

struct HatModel {
  using Point = HatPoint;
  using Dir = HatDirection;

  const SdlcpOps& ops;
  const Params& prm;

  double tau(const Point& hp) const { return hp.Xhat(ops.n, ops.n); }
  double kappa(const Point& hp) const { return hp.Yhat(ops.n, ops.n); }

  double mu(const Point& hp) const { return hp.mu(); }
  NeighborhoodDistance dist(const Point& hp) const { return hat_neighborhood_distance(hp); }
  bool interior(const Point& hp) const {
    return is_positive_definite(hp.Xhat) && is_positive_definite(hp.Yhat);
  }
  Dir predictor_dir(const Point& hp) const {
    return solve_hat_direction_centered(ops, hp, 0.0, ops.residual(hp.Xhat, hp.Yhat));
  }
  Dir corrector_dir(const Point& hp, double center) const {
    return solve_hat_direction_centered(ops, hp, center, Vector(ops.dim, 0.0));
  }
  Point step(const Point& hp, const Dir& d, double a) const {
    Point q = hp;
    q.Xhat.axpy(a, d.dXhat);
    q.Yhat.axpy(a, d.dYhat);
    return q;
  }
  double delta(const Point& hp, const Dir& d) const { return delta_measure(hp, d); }
  Status classify_point(const Point& hp) const {
    const double t = tau(hp);
    if (t > 0.0) {
      const Vector r = ops.residual(hp.Xhat, hp.Yhat);
      const double gap = trace_product(hp.Xhat, hp.Yhat) / (t * t);
      if (std::max(gap, norm2(r) / t) <= prm.eps) return Status::Solved;
    }
    if (t <= prm.eps_tau && kappa(hp) >= t / prm.eps_tau) return Status::NoOptimalSolution;
    return Status::Continue;
  }
  bool closed_cone(const Point& hp) const { return nearly_psd(hp.Xhat) && nearly_psd(hp.Yhat); }
  void fill(const Point& hp, TraceRow& row) const {
    const Vector r = ops.residual(hp.Xhat, hp.Yhat);
    const std::size_t split = ops.m + ops.n;
    const std::span<const double> v(r);
    row.tau = tau(hp);
    row.kappa = kappa(hp);
    row.norm_r = norm2(v.subspan(0, split));
    row.norm_s = norm2(v.subspan(split));
    row.gamma = r[split];
  }
};

// ---------------------------------------------------------------- generic steps

template <class Model>
struct PredStep {
  typename Model::Point point;
  typename Model::Dir dir;
  double alpha_bar = 0.0, delta = 0.0, alpha1 = 0.0, alpha2 = 0.0;
  bool exact = false;
};

template <class Model>
PredStep<Model> predict(const Model& model, const typename Model::Point& pt, const Params& prm,
                        std::optional<double> forced = std::nullopt) {
  PredStep<Model> out;
  const double mu = model.mu(pt);
  out.dir = model.predictor_dir(pt);
  out.delta = model.delta(pt, out.dir);
  out.alpha1 = alpha1_bound(out.delta, prm.beta1, prm.beta2);

  // μ(α) = (1−α)μ along the predictor ray, so α = 1 lands on μ = 0; accept it
  // when the endpoint is in the closed cone and already classifies as terminal.
  if (!forced || *forced >= 1.0) {
    auto full = model.step(pt, out.dir, 1.0);
    if (std::abs(model.mu(full)) <= 1e-12 * mu && model.closed_cone(full) &&
        model.classify_point(full) != Status::Continue) {
      out.point = std::move(full);
      out.alpha_bar = out.alpha2 = 1.0;
      out.exact = true;
      return out;
    }
  }

  auto member = [&](double a) {
    const auto q = model.step(pt, out.dir, a);
    if (!model.interior(q)) return false;
    try {
      return model.dist(q).dist <= prm.beta2 * (1.0 - a) * mu;
    } catch (const Error&) {
      return false;
    }
  };

  double lo = 0.0;
  double hi = 1.0;
  constexpr int kSamples = 32;
  for (int round = 0; round < 16; ++round) {
    while (hi - lo > prm.bisect_tol) {
      const double mid = 0.5 * (lo + hi);
      (member(mid) ? lo : hi) = mid;
    }
    double bad = -1.0;
    for (int j = 1; j < kSamples; ++j) {
      const double s = lo * static_cast<double>(j) / kSamples;
      if (!member(s)) {
        bad = s;
        break;
      }
    }
    if (bad < 0.0) break;
    hi = bad;
    lo = 0.0;
  }
  out.alpha2 = lo;

  // Below mu_floor the distance is not resolvable, so α₁ ≤ α₂ is only enforced above it.
  const bool resolvable = (1.0 - out.alpha1) * mu > prm.mu_floor;
  if (resolvable && out.alpha2 < out.alpha1 - prm.bisect_tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "alpha2 = " << out.alpha2 << " < alpha1 = " << out.alpha1 << " (delta = " << out.delta << ")";
    throw Error(ErrorCode::StepOrderViolation, msg.str());
  }

  if (forced) {
    out.alpha_bar = *forced;
  } else {
    out.alpha_bar = (prm.rule == StepRule::Greedy) ? out.alpha2 : std::min(out.alpha1, out.alpha2);
  }
  out.point = model.step(pt, out.dir, out.alpha_bar);
  return out;
}

template <class Model>
typename Model::Point correct(const Model& model, const typename Model::Point& pt_bar, double alpha_bar,
                              double mu_prev, const Params& prm) {
  const double center = (1.0 - alpha_bar) * mu_prev;
  const auto d = model.corrector_dir(pt_bar, center);
  auto next = model.step(pt_bar, d, 1.0);
  if (!model.interior(next)) throw Error(ErrorCode::CorrectorEscape, "corrector left the interior");
  const auto nd = model.dist(next);
  if (!(nd.dist <= prm.beta1 * nd.mu)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "distance " << nd.dist << " > beta1 * mu = " << prm.beta1 * nd.mu;
    throw Error(ErrorCode::CorrectorEscape, msg.str());
  }
  return next;
}

template <class Model>
struct LoopResult {
  Status status = Status::Continue;
  bool stopped = false;
  typename Model::Point point;
  IterTrace trace;
  std::vector<typename Model::Point> iterates;
};

template <class Model, class Stop>
LoopResult<Model> drive(const Model& model, typename Model::Point pt, const Params& prm, bool keep,
                        const std::vector<double>& forced, Stop&& stop) {
  prm.validate();
  LoopResult<Model> out;
  if (keep) out.iterates.push_back(pt);

  for (int k = 0;; ++k) {
    try {
      const Status st = model.classify_point(pt);
      if (st == Status::Solved || st == Status::NoOptimalSolution) {
        out.status = st;
        break;
      }
      const double mu = model.mu(pt);
      if (mu <= prm.mu_floor) {
        out.status = Status::MuFloor;
        break;
      }
      if (k >= prm.max_iter) {
        out.status = Status::MaxIter;
        break;
      }
      if (stop(pt, k)) {
        out.stopped = true;
        break;
      }

      TraceRow row;
      row.k = k;
      row.mu = mu;
      model.fill(pt, row);
      if (!model.interior(pt)) throw Error(ErrorCode::NotInterior, "iterate is not interior");
      row.nbr_dist = model.dist(pt).dist;
      if (!(row.nbr_dist <= prm.beta1 * mu)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "distance " << row.nbr_dist << " > beta1 * mu = " << prm.beta1 * mu;
        throw Error(ErrorCode::NotInNeighborhood, msg.str());
      }

      std::optional<double> force;
      if (static_cast<std::size_t>(k) < forced.size()) force = forced[static_cast<std::size_t>(k)];
      auto pred = predict(model, pt, prm, force);
      row.alpha_bar = pred.alpha_bar;
      row.alpha1 = pred.alpha1;
      row.alpha2 = pred.alpha2;
      row.delta = pred.delta;
      row.pred_mu = (1.0 - pred.alpha_bar) * mu;
      row.exact_step = pred.exact;

      typename Model::Point next;
      if (pred.exact) {
        next = std::move(pred.point);
      } else {
        row.pred_dist = model.dist(pred.point).dist;
        if (model.mu(pred.point) <= prm.mu_floor) {
          // The stopping level is reached at the predictor output; the run ends there.
          row.next_dist = row.pred_dist;
          next = std::move(pred.point);
        } else {
          next = correct(model, pred.point, pred.alpha_bar, mu, prm);
          row.next_dist = model.dist(next).dist;
          row.corrected = true;
        }
      }
      row.next_mu = model.mu(next);
      row.ratio = row.next_mu / mu;
      out.trace.push_back(row);
      pt = std::move(next);
      if (keep) out.iterates.push_back(pt);
    } catch (const RunBreach&) {
      throw;
    } catch (const Error& e) {
      throw RunBreach(e, out.trace, k);
    }
  }
  out.point = std::move(pt);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- public API

PredictorResult predictor(const Lsdfp& p, const HPoint& pt, const Params& params) {
  params.validate();
  const HomogeneousModel model{p, params};
  if (!in_neighborhood(pt, params.beta1))
    throw Error(ErrorCode::NotInNeighborhood, "predictor input is outside the beta1 neighborhood");
  auto step = predict(model, pt, params);
  return {std::move(step.point), std::move(step.dir), step.alpha_bar, step.delta, step.alpha1, step.alpha2, step.exact};
}

HPoint corrector(const Lsdfp& p, const HPoint& pt_bar, double alpha_bar, double mu_prev, const Params& params) {
  params.validate();
  const HomogeneousModel model{p, params};
  return correct(model, pt_bar, alpha_bar, mu_prev, params);
}

RunResult run(const Lsdfp& p, const HPoint& start, const Params& params, const RunOptions& opts) {
  const HomogeneousModel model{p, params};
  auto stop = [&](const HPoint& pt, int k) { return opts.observer && opts.observer(pt, k); };
  auto loop = drive(model, start, params, opts.keep_iterates, {}, stop);

  RunResult res;
  res.status = loop.status;
  res.stopped = loop.stopped;
  res.trace = std::move(loop.trace);
  res.iterates = std::move(loop.iterates);
  if ((res.status == Status::Solved || res.status == Status::MuFloor) && loop.point.tau > 0.0)
    res.solution = scale_out(loop.point);
  res.point = std::move(loop.point);
  return res;
}

HatRunResult run_sdlcp(const SdlcpOps& ops, const HatPoint& start, const Params& params, const HatRunOptions& opts) {
  const HatModel model{ops, params};
  auto never = [](const HatPoint&, int) { return false; };
  auto loop = drive(model, start, params, opts.keep_iterates, opts.forced_alpha, never);
  HatRunResult res;
  res.status = loop.status;
  res.point = std::move(loop.point);
  res.trace = std::move(loop.trace);
  res.iterates = std::move(loop.iterates);
  return res;
}

NeighborhoodDistance hat_neighborhood_distance(const HatPoint& hp) {
  if (!is_positive_definite(hp.Xhat)) throw Error(ErrorCode::NotInterior, "X-hat is not positive definite");
  const double mu = hp.mu();
  try {
    return {centrality_deviation(hp.Xhat, hp.Yhat, mu), mu};
  } catch (const Error&) {
    throw Error(ErrorCode::NotInterior, "Y-hat is not positive definite");
  }
}

// ---------------------------------------------------------------- equivalence

EquivalenceReport check_equivalence(const Lsdfp& p, const HPoint& start, const Params& params, int k_max,
                                    const EquivalenceOptions& opts) {
  EquivalenceReport rep;
  Params prm = params;
  prm.max_iter = k_max;

  RunOptions ro;
  ro.keep_iterates = true;
  const RunResult base = run(p, start, prm, ro);

  SdlcpOps ops = build_ops(p);
  if (opts.inject_fault) {
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss(0.0, 1e-3);
    auto row = ops.B_hat.row(ops.dim - 1);
    for (double& v : row) v += gauss(rng);
  }

  HatRunOptions ho;
  ho.keep_iterates = true;
  for (const auto& row : base.trace) ho.forced_alpha.push_back(row.alpha_bar);

  HatRunResult hat;
  std::size_t hat_count = 0;
  try {
    hat = run_sdlcp(ops, embed(start), prm, ho);
    hat_count = hat.iterates.size();
  } catch (const Error&) {
    if (!opts.inject_fault) throw;
    rep.passed = false;
    rep.first_failure = 1;
    return rep;
  }

  const std::size_t count = std::min(base.iterates.size(), hat_count);
  for (std::size_t k = 0; k < count; ++k) {
    const HatPoint want = embed(base.iterates[k]);
    const HatPoint& got = hat.iterates[k];
    const double dx = frobenius_norm(got.Xhat - want.Xhat) / frobenius_norm(want.Xhat);
    const double dy = frobenius_norm(got.Yhat - want.Yhat) / frobenius_norm(want.Yhat);
    const double mu = base.iterates[k].mu();
    const double dmu = std::abs(got.mu() - mu) / mu;
    rep.block_dev.push_back(std::max(dx, dy));
    rep.mu_dev.push_back(dmu);
    if (k < base.trace.size() && k < hat.trace.size())
      rep.alpha2_dev.push_back(std::abs(base.trace[k].alpha2 - hat.trace[k].alpha2));
    if ((rep.block_dev.back() > opts.block_tol || dmu > opts.mu_tol) && rep.passed) {
      rep.passed = false;
      rep.first_failure = static_cast<int>(k);
    }
  }
  rep.compared = static_cast<int>(count);
  if (base.iterates.size() != hat_count && rep.passed) {
    rep.passed = false;
    rep.first_failure = static_cast<int>(count);
  }
  return rep;
}

void require_equivalence(const EquivalenceReport& rep) {
  if (rep.passed) return;
  std::ostringstream msg;
  msg << "iterates diverge at k = " << rep.first_failure;
  const auto k = static_cast<std::size_t>(rep.first_failure);
  if (k < rep.block_dev.size()) msg << " (block deviation " << rep.block_dev[k] << ", mu deviation " << rep.mu_dev[k] << ")";
  throw Error(ErrorCode::EquivalenceViolation, msg.str());
}

// ---------------------------------------------------------------- superlinear

SuperlinearReport superlinear_report(std::span<const double> ratios, int tail) {
  if (tail < 1 || ratios.size() < static_cast<std::size_t>(tail) + 1)
    throw Error(ErrorCode::InsufficientTrace, "need at least tail + 1 trace rows");
  SuperlinearReport rep;
  const std::size_t start = ratios.size() - static_cast<std::size_t>(tail);
  rep.tail.assign(ratios.begin() + static_cast<std::ptrdiff_t>(start), ratios.end());
  rep.final_ratio = rep.tail.back();
  rep.monotone_decreasing = true;
  for (std::size_t i = 1; i < rep.tail.size(); ++i)
    if (!(rep.tail[i] < rep.tail[i - 1])) rep.monotone_decreasing = false;
  rep.superlinear = rep.monotone_decreasing && rep.tail.size() >= 2;

  // log μ_{k+1} ≈ q·log μ_k + c over the tail, μ reconstructed from μ₀ = 1.
  Vector logmu{0.0};
  for (double r : ratios) logmu.push_back(r > 0.0 ? logmu.back() + std::log(r) : -std::numeric_limits<double>::infinity());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t k = start; k < ratios.size(); ++k) {
    const double x = logmu[k];
    const double y = logmu[k + 1];
    if (!std::isfinite(x) || !std::isfinite(y)) continue;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double den = count * sxx - sx * sx;
  rep.q_order = (count >= 2 && den != 0.0) ? (count * sxy - sx * sy) / den : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

SuperlinearReport superlinear_report(const IterTrace& trace, int tail) {
  Vector ratios;
  ratios.reserve(trace.size());
  for (const auto& row : trace) ratios.push_back(row.ratio);
  return superlinear_report(ratios, tail);
}

}  // namespace sdfeas
