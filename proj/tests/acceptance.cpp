// Acceptance suite. One PASS/FAIL line per criterion.
//   acceptance            run all criteria, exit 1 if any fails
//   acceptance <k>        run criterion k only

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <string>
#include <vector>

#include "cyclic/cyclic.hpp"
#include "cyclic/runner/config.hpp"
#include "cyclic/runner/experiments.hpp"
#include "cyclic/runner/svg.hpp"

namespace {

using cyc::cplx;

// tolerances
constexpr double envelope_rel_tol = 1e-6;
constexpr std::size_t envelope_grid = 8192;
constexpr double growth_limit = 2.0 + 1e-9;
constexpr double convergence_limit = 0.05;
constexpr double rounding_floor = 1e-14;
constexpr double moment_slack = 1.0 / 402.0;
constexpr double unit_multiplier_tol = 1e-12;
constexpr double parseval_tol = 1e-10;
constexpr double decay_factor = 0.25;
constexpr double orthogonality_tol = 1e-7;
constexpr double idempotence_tol = 1e-8;
constexpr std::uint64_t seed = 20240611;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome envelope_closed_form() {
  double worst = 0.0;
  for (double m : {0.5, 1.0, 2.0}) {
    const cyc::InnerFunctionSpec spec(cyc::SingularMeasure::atom(0.0, m));
    for (double r : {0.25, 0.5, 0.9, 0.99}) {
      const double closed = std::exp(-m * (1.0 + r) / (1.0 - r));
      const double env = cyc::min_modulus_envelope(spec, r, envelope_grid).value;
      worst = std::max(worst, std::abs(env - closed) / closed);
    }
  }
  return {worst <= envelope_rel_tol, fmt("max relative error %.3e (limit 1e-6)", worst)};
}

struct CyclicFixture {
  cyc::ScaledMeasure scaled;
  cyc::ApproximantBundle bundle;
};

const CyclicFixture& cyclic_fixture() {
  static const CyclicFixture fx = [] {
    const auto pair = cyc::default_cyclic_pair();
    auto scaled = cyc::scale_mass_to_dominate(pair.shape, pair.weight);
    auto bundle = cyc::build_approximants(scaled.measure, pair.weight, {2, 4, 8, 16, 32});
    return CyclicFixture{std::move(scaled), std::move(bundle)};
  }();
  return fx;
}

Outcome growth_bound() {
  const auto& fx = cyclic_fixture();
  const auto rep = cyc::verify_growth_bound(fx.bundle, cyc::verification_radii(64), 1024);
  double worst = -INFINITY;
  for (double v : rep.max_value) worst = std::max(worst, v);
  return {rep.grid_points == 64 * 1024 && worst <= growth_limit,
          fmt("max |theta p_n| w = %.6f over 64x1024 points (limit 2 + 1e-9)", worst)};
}

Outcome pointwise_convergence() {
  const auto& fx = cyclic_fixture();
  bool ok = true;
  std::string detail;
  for (const auto& row : cyc::verify_pointwise_convergence(fx.bundle, cyc::default_convergence_points())) {
    const double first = row.deviation.front();
    const double last = row.deviation.back();
    const bool dec = last < first || (first <= rounding_floor && last <= rounding_floor);
    ok = ok && last < convergence_limit && dec;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%sz=(%g,%g) n=2 %.3e n=32 %.3e", detail.empty() ? "" : "; ", row.z.real(),
                  row.z.imag(), first, last);
    detail += buf;
  }
  return {ok, detail};
}

Outcome moments() {
  const std::size_t n_max = 400;
  const auto mu = cyc::LambdaSequence::power(1.0).reciprocals(n_max);
  const auto w = cyc::moment_weight(mu, n_max);
  double worst = INFINITY;
  for (std::size_t N = 0; N <= 50; ++N) worst = std::min(worst, cyc::monomial_moment(w, N) - mu[N]);
  return {worst >= -moment_slack, fmt("min_N (moment_N - mu_N) = %.6f (limit -1/402)", worst)};
}

Outcome unit_multiplier() {
  double worst = 0.0;
  const auto one = cyc::RadialWeight::constant(1.0);
  for (std::size_t M : {40, 48, 64, 200}) {
    const auto W = cyc::multiplier_weight(one, M);
    worst = std::max(worst, std::abs(cyc::multiplier_integral(W, one) - 1.5));
  }
  return {worst <= unit_multiplier_tol, fmt("max |int W - 3/2| over M in {40,48,64,200} = %.3e", worst)};
}

Outcome parseval() {
  cyc::Lcg64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto f = cyc::random_polynomial(rng, 64);
    for (double r : {0.1, 0.5, 0.9, 0.99}) {
      const auto id = cyc::radial_difference_identity(f, r);
      worst = std::max(worst, std::abs(id.lhs - id.rhs));
    }
  }
  return {worst <= parseval_tol, fmt("max |lhs - rhs| = %.3e (limit 1e-10)", worst)};
}

Outcome embedding() {
  cyc::Lcg64 rng(seed);
  double worst = 0.0;
  bool ok = true;
  for (double a : {0.5, 0.25}) {
    const auto omega = cyc::ModulusOfContinuity::hoelder(a);
    const auto seq = cyc::embedding_sequence(omega, 12, 50);
    for (int i = 0; i < 100; ++i) {
      const auto deg = static_cast<std::size_t>(cyc::uniform01(rng) * 51.0);
      const auto f = cyc::random_polynomial(rng, std::min<std::size_t>(deg, 50));
      const auto chk = cyc::verify_embedding(f, omega, seq);
      ok = ok && chk.ok;
      worst = std::max(worst, chk.lhs / chk.rhs);
    }
  }
  return {ok, fmt("max lhs / (C est^2) = %.4f over 200 cases", worst)};
}

Outcome pipeline() {
  const auto rep = cyc::theorem_pipeline({});
  bool dec = true;
  for (std::size_t i = 1; i < rep.levels.size(); ++i) dec = dec && rep.levels[i].B <= rep.levels[i - 1].B;
  const double ratio = rep.levels.back().B / rep.levels.front().B;
  double dom = 0.0;
  for (const auto& lv : rep.levels) dom = std::max(dom, lv.domination_ratio);
  // targets recomputed here from 0.9 and c = 1/2: 0.9 * 2 |f(0)|^2 / B_n
  bool cert = !rep.certificates.empty();
  for (const auto& c : rep.certificates) {
    double B = 0.0;
    for (const auto& lv : rep.levels)
      if (lv.n == c.n) B = lv.B;
    const double need = 0.9 * 2.0 * c.f0_abs * c.f0_abs / B;
    cert = cert && c.reached() && c.S >= need;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "(a) B_32/B_2 = %.4f monotone=%s (b) max |g|^2 w^2/4 = %.3e (c) certificates %s",
                ratio, dec ? "yes" : "no", dom, cert ? "all reached" : "missing");
  return {dec && ratio < decay_factor && dom <= 1.0 && cert, buf};
}

Outcome orthogonality() {
  const std::size_t K = 1024;
  const auto theta = cyc::taylor_singular_inner(cyc::SingularMeasure::atom(0.0, 1.0), K);
  double orth = 0.0;
  double orth_bound = 0.0;
  for (const cplx lam : {cplx{0.0, 0.0}, cplx{0.5, 0.0}, cplx{0.0, 0.9}, cplx{-0.6, 0.6}}) {
    const auto k = cyc::ktheta_kernel(theta, lam, K);
    orth_bound = std::max(orth_bound, k.truncation_error);
    for (std::size_t j = 0; j <= 64; ++j) {
      const auto tz = cyc::multiply(theta, cyc::PowerSeries::monomial(j), K);
      orth = std::max(orth, std::abs(cyc::pairing(k.series, tz)));
    }
  }
  cyc::Lcg64 rng(seed);
  double idem = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto f = cyc::random_polynomial(rng, 64);
    const auto p1 = cyc::project_ktheta(f, theta, K);
    const auto p2 = cyc::project_ktheta(p1.series, theta, K);
    idem = std::max(idem, (p2.series - p1.series).l2_norm());
  }
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "max pairing %.3e (limit 1e-7), idempotence %.3e (limit 1e-8); certified kernel truncation bound "
                "%.3e, missing H^2 mass of theta at K=1024 %.3e",
                orth, idem, orth_bound, cyc::inner_tail_norm(theta, K));
  return {orth <= orthogonality_tol && idem <= idempotence_tol, buf};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const auto base = fs::temp_directory_path() / ("cyclic_accept_" + std::to_string(::getpid()));
  fs::remove_all(base);
  bool same = true;
  std::size_t files = 0;
  for (const auto& kind : cyc::runner::experiment_kinds) {
    std::string a;
    for (int run = 0; run < 2; ++run) {
      auto cfg = cyc::runner::load_config_text("kind = " + kind + "\n");
      cfg.set("seed", std::to_string(seed));
      const auto dir = base / std::to_string(run);
      const auto out = cyc::runner::run_and_write(cfg, dir);
      const auto text = slurp(out.csv);
      if (run == 0) a = text;
      else same = same && a == text && !a.empty();
    }
    ++files;
  }
  const auto t = cyc::runner::read_csv(base / "0" / "pipeline.csv");
  same = same && cyc::runner::render_plot(t, "bn") == cyc::runner::render_plot(t, "bn");
  fs::remove_all(base);
  return {same, std::to_string(files) + " experiment CSVs byte-identical across two runs"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"envelope closed form", envelope_closed_form},
      {"growth bound |theta p_n| w <= 2", growth_bound},
      {"pointwise convergence theta p_n -> 1", pointwise_convergence},
      {"moment weight dominates 1/(n+1)", moments},
      {"multiplier integral for g = 1", unit_multiplier},
      {"radial difference identity", parseval},
      {"embedding inequality", embedding},
      {"non-membership pipeline", pipeline},
      {"model space orthogonality and projection", orthogonality},
      {"determinism", determinism},
  };
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu %s: %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
