#include "rpit/simgen.hpp"

#include <cmath>
#include <string>

#include "rpit/errors.hpp"
#include "rpit/parallel.hpp"

namespace rpit {

namespace {

// Integrand t/(e^t - 1) with its removable singularity at 0 expanded.
double debye_integrand(double t) {
  if (std::abs(t) < 1e-5) return 1.0 - t / 2.0 + t * t / 12.0;
  return t / std::expm1(t);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole,
                        double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = debye_integrand(lm);
  const double frm = debye_integrand(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return adaptive_simpson(a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         adaptive_simpson(m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

}  // namespace

double clayton_alpha_from_tau(double tau) {
  if (!(tau >= 0.0) || tau >= 1.0)
    throw DomainError("clayton_alpha_from_tau: tau must be in [0, 1)");
  if (tau == 0.0) return 0.0;
  return 2.0 / (1.0 / tau - 1.0);
}

double debye1(double beta) {
  if (!(beta > 0.0)) throw DomainError("debye1: beta must be > 0");
  if (beta < 1e-3) {
    // Series of (1/beta) * integral of (1 - t/2 + t^2/12 - t^4/720).
    return 1.0 - beta / 4.0 + beta * beta / 36.0 -
           beta * beta * beta * beta / 3600.0;
  }
  const double fa = debye_integrand(0.0);
  const double fb = debye_integrand(beta);
  const double fm = debye_integrand(0.5 * beta);
  const double whole = beta / 6.0 * (fa + 4.0 * fm + fb);
  const double integral = adaptive_simpson(0.0, beta, fa, fm, fb, whole, 1e-12, 60);
  return integral / beta;
}

namespace {

double frank_tau_of_beta(double beta) { return 1.0 + 4.0 * (debye1(beta) - 1.0) / beta; }

}  // namespace

double frank_beta_from_tau(double tau) {
  if (!(tau > 0.0) || tau >= 1.0)
    throw DomainError("frank_beta_from_tau: tau must be in (0, 1)");
  double lo = 1e-12;
  double hi = 1.0;
  while (frank_tau_of_beta(hi) < tau) {
    hi *= 2.0;
    if (hi > 1e8) throw NumericError("frank_beta_from_tau: tau too close to 1");
  }
  // tau(beta) is strictly increasing; plain bisection.
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (frank_tau_of_beta(mid) < tau)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

CopulaSampler::CopulaSampler(CopulaSpec spec) : spec_(spec) {
  if (spec_.tau == 0.0) {
    param_ = 0.0;
  } else if (spec_.family == CopulaFamily::Clayton) {
    param_ = clayton_alpha_from_tau(spec_.tau);
  } else {
    param_ = frank_beta_from_tau(spec_.tau);
  }
}

std::pair<double, double> CopulaSampler::sample(SplitMix64& rng) const {
  const double u = rng.uniform_open01();
  const double p = rng.uniform_open01();
  if (param_ == 0.0) return {u, p};

  if (spec_.family == CopulaFamily::Clayton) {
    const double alpha = param_;
    // Invert the conditional distribution of the second coordinate given the
    // first: v = ((p^(-alpha/(1+alpha)) - 1) * u^(-alpha) + 1)^(-1/alpha).
    const double v = std::pow(
        (std::pow(p, -alpha / (1.0 + alpha)) - 1.0) * std::pow(u, -alpha) + 1.0, -1.0 / alpha);
    return {u, v};
  }

  const double beta = param_;
  // Same inversion for the Frank family, with A = e^(-beta*u), D = e^(-beta):
  // v = -ln(1 + p*(D - 1) / (A*(1 - p) + p)) / beta.
  const double a = std::exp(-beta * u);
  const double d = std::exp(-beta);
  const double v = -std::log1p(p * (d - 1.0) / (a * (1.0 - p) + p)) / beta;
  return {u, v};
}

std::pair<double, double> copula_sample(const CopulaSpec& spec, SplitMix64& rng) {
  return CopulaSampler(spec).sample(rng);
}

double marginal_inverse(double u) {
  if (!(u > 0.0) || !(u < 1.0)) throw DomainError("marginal_inverse: u must be in (0, 1)");
  return -10.0 * std::log1p(-u);
}

void ScenarioSpec::validate() const {
  if (n < 2) throw DomainError("scenario: n must be >= 2");
  if (reps < 1) throw DomainError("scenario: reps must be >= 1");
  if (!(level > 0.0) || !(level < 1.0)) throw DomainError("scenario: level must be in (0, 1)");
  if (!(c_r > 0.0)) throw DomainError("scenario: c_r must be > 0");
  if (scheme == CensorScheme::C1 && !(c_l > 0.0))
    throw DomainError("scenario: c_l must be > 0");
  if (scheme == CensorScheme::C2) {
    const double ratio = c_r / 3.0;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 || c_r < 3.0)
      throw DomainError("scenario: C2 requires c_r to be a positive multiple of 3");
  }
}

RightObs censor_one(double value, double censor_time) {
  return {std::min(value, censor_time), value <= censor_time};
}

IntervalObs classify_two_visit(double value, double t1, double t2) {
  if (value <= t1) return IntervalObs::left_censored(t1);
  if (value <= t2) return IntervalObs::interval(t1, t2);
  return IntervalObs::right_censored(t2);
}

IntervalObs bucket_every_three(double value, double c_r) {
  if (value > c_r) return IntervalObs::right_censored(c_r);
  const int bin = static_cast<int>(std::ceil(value / 3.0));
  if (bin <= 1) return IntervalObs::left_censored(3.0);
  return IntervalObs::interval(3.0 * (bin - 1), 3.0 * bin);
}

BivariateRightData apply_right_censoring(const std::vector<std::pair<double, double>>& pairs,
                                         double c_r, SplitMix64& rng) {
  if (!(c_r > 0.0)) throw DomainError("apply_right_censoring: c_r must be > 0");
  BivariateRightData data;
  data.x.reserve(pairs.size());
  data.y.reserve(pairs.size());
  for (const auto& [xv, yv] : pairs) {
    const double cx = c_r * rng.uniform_open01();
    const double cy = c_r * rng.uniform_open01();
    data.x.push_back(censor_one(xv, cx));
    data.y.push_back(censor_one(yv, cy));
  }
  return data;
}

BivariateIntervalData apply_interval_censoring_c1(
    const std::vector<std::pair<double, double>>& pairs, double c_l, double c_r, SplitMix64& rng) {
  if (!(c_l > 0.0) || !(c_r > 0.0))
    throw DomainError("apply_interval_censoring_c1: horizons must be > 0");
  BivariateIntervalData data;
  data.x.reserve(pairs.size());
  data.y.reserve(pairs.size());
  for (const auto& [xv, yv] : pairs) {
    const double t1x = c_l * rng.uniform_open01();
    const double t2x = t1x + c_r * rng.uniform_open01();
    data.x.push_back(classify_two_visit(xv, t1x, t2x));
    const double t1y = c_l * rng.uniform_open01();
    const double t2y = t1y + c_r * rng.uniform_open01();
    data.y.push_back(classify_two_visit(yv, t1y, t2y));
  }
  return data;
}

BivariateIntervalData apply_interval_censoring_c2(
    const std::vector<std::pair<double, double>>& pairs, double c_r) {
  const double ratio = c_r / 3.0;
  if (!(c_r > 0.0) || std::abs(ratio - std::round(ratio)) > 1e-9)
    throw DomainError("apply_interval_censoring_c2: c_r must be a positive multiple of 3");
  BivariateIntervalData data;
  data.x.reserve(pairs.size());
  data.y.reserve(pairs.size());
  for (const auto& [xv, yv] : pairs) {
    data.x.push_back(bucket_every_three(xv, c_r));
    data.y.push_back(bucket_every_three(yv, c_r));
  }
  return data;
}

ExperimentSummary run_experiment(const CopulaSpec& copula, const ScenarioSpec& scenario,
                                 const ExperimentBudgets& budgets, std::uint64_t seed) {
  scenario.validate();
  const CopulaSampler sampler(copula);
  const std::size_t reps = static_cast<std::size_t>(scenario.reps);
  const bool with_oakes = scenario.scheme == CensorScheme::Right;

  struct RepResult {
    double rp_stat, rp_p_asym, rp_p_perm;
    double oakes_stat, oakes_p_asym, oakes_p_perm;
  };
  std::vector<RepResult> results(reps);

  parallel_for(reps, budgets.threads, [&](std::size_t rep) {
    SplitMix64 rng(derive_seed(seed, rep));
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(static_cast<std::size_t>(scenario.n));
    for (int i = 0; i < scenario.n; ++i) {
      const auto [u1, u2] = sampler.sample(rng);
      pairs.emplace_back(marginal_inverse(u1), marginal_inverse(u2));
    }

    TestConfig config;
    config.mc_samples = budgets.mc_samples;
    config.perms = budgets.perms;
    config.burn_in = budgets.burn_in;
    config.thin = budgets.thin;
    config.estimator = budgets.estimator;
    config.threads = 1;  // replicate-level parallelism only
    config.seed = rng.next();

    RepResult r{};
    if (scenario.scheme == CensorScheme::Right) {
      const BivariateRightData data = apply_right_censoring(pairs, scenario.c_r, rng);
      const TestReport report = test_independence(data, config);
      r.rp_stat = report.statistic;
      r.rp_p_asym = report.p_asym;
      r.rp_p_perm = report.p_perm;

      r.oakes_stat = oakes_tau(data.x, data.y);
      SplitMix64 oakes_rng(rng.next());
      const std::vector<double> null_draws =
          oakes_permutation_null(data.x, data.y, budgets.perms, oakes_rng, 1);
      const PValues pv = p_values(r.oakes_stat, null_draws);
      r.oakes_p_asym = pv.p_asym;
      r.oakes_p_perm = pv.p_perm;
    } else {
      const BivariateIntervalData data =
          scenario.scheme == CensorScheme::C1
              ? apply_interval_censoring_c1(pairs, scenario.c_l, scenario.c_r, rng)
              : apply_interval_censoring_c2(pairs, scenario.c_r);
      const TestReport report = test_independence(data, config);
      r.rp_stat = report.statistic;
      r.rp_p_asym = report.p_asym;
      r.rp_p_perm = report.p_perm;
    }
    results[rep] = r;
  });

  auto summarize = [&](auto stat_of, auto pa_of, auto pp_of) {
    MetricRow row;
    double sum = 0.0, sum_sq = 0.0;
    std::size_t reject_a = 0, reject_p = 0;
    for (const RepResult& r : results) {
      const double est = stat_of(r);
      sum += est - copula.tau;
      sum_sq += (est - copula.tau) * (est - copula.tau);
      if (pa_of(r) <= scenario.level) ++reject_a;
      if (pp_of(r) <= scenario.level) ++reject_p;
    }
    const double m = static_cast<double>(reps);
    row.bias = sum / m;
    row.mse = sum_sq / m;
    row.ep_a = static_cast<double>(reject_a) / m;
    row.ep_p = static_cast<double>(reject_p) / m;
    return row;
  };

  ExperimentSummary summary;
  summary.copula = copula;
  summary.scenario = scenario;
  summary.budgets = budgets;
  summary.seed = seed;

  MetricRow rp = summarize([](const RepResult& r) { return r.rp_stat; },
                           [](const RepResult& r) { return r.rp_p_asym; },
                           [](const RepResult& r) { return r.rp_p_perm; });
  rp.estimator = "rp";
  summary.metrics.push_back(rp);

  if (with_oakes) {
    MetricRow oakes = summarize([](const RepResult& r) { return r.oakes_stat; },
                                [](const RepResult& r) { return r.oakes_p_asym; },
                                [](const RepResult& r) { return r.oakes_p_perm; });
    oakes.estimator = "oakes";
    summary.metrics.push_back(oakes);
  }
  return summary;
}

}  // namespace rpit
