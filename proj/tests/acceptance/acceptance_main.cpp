// Copyright 2026 The privmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "privmech/privmech.hpp"
#include "test_util.hpp"

namespace {

using namespace privmech;  // NOLINT
using privmech::testing::oracle_binary_kl_grid;
using privmech::testing::random_distribution;

// Collects the first few failure messages of one criterion.
class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_.push_back(what);
  }
  void note(const std::string& what) { notes_.push_back(what); }

  bool report() const {
    std::printf("%s criterion %s (%d checks, %d failed)\n",
                failures_ == 0 ? "PASS" : "FAIL", name_.c_str(), checks_,
                failures_);
    for (const auto& n : notes_) std::printf("    %s\n", n.c_str());
    return failures_ == 0;
  }

 private:
  std::string name_;
  int checks_ = 0;
  int failures_ = 0;
  std::vector<std::string> notes_;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return buf;
}

bool criterion1() {
  Criterion c("1 exact coefficient formulas");
  for (Index k = 2; k <= 10; ++k) {
    for (double a : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const double e = std::exp2(a);
      const double got = dobrushin_coefficient(randomized_response(k, a));
      const double want = (e - 1) / (e + double(k) - 1);
      c.expect(std::abs(got - want) <= 1e-12,
               fmt("rr k=%d a=%g: %.17g vs %.17g", int(k), a, got, want));
    }
  }
  for (int i = 0; i <= 10; ++i) {
    const double a = i / 10.0;
    const double got = dobrushin_coefficient(z_channel(a));
    const double want = std::exp2(a) - 1;
    c.expect(std::abs(got - want) <= 1e-12,
             fmt("z a=%g: %.17g vs %.17g", a, got, want));
  }
  return c.report();
}

bool criterion2() {
  Criterion c("2 bound sweeps over random channels");
  const std::vector<testing::Shape> shapes = {
      {2, 2}, {2, 5}, {4, 4}, {5, 3}, {8, 8}};
  std::uint64_t seed = 0;
  double worst_thm4 = 0;
  for (const auto& shape : shapes) {
    for (double conc : {0.1, 1.0, 10.0}) {
      for (int t = 0; t < 1000; ++t, ++seed) {
        const Channel w = random_channel(shape.rows, shape.cols, conc, seed);
        for (const auto& v : run_all_checks(w)) {
          c.expect(v.passed, fmt("%s seed=%llu margin=%.3g", v.name.c_str(),
                                 (unsigned long long)seed, v.margin));
        }
        if (shape.rows == 2) {
          const double m = std::abs(check_thm4(w).margin);
          worst_thm4 = std::max(worst_thm4, m);
          c.expect(m <= 1e-10, fmt("thm4 equality seed=%llu |margin|=%.3g",
                                   (unsigned long long)seed, m));
        }
      }
    }
  }
  c.note(fmt("15000 channels; worst |thm4 margin| on 2-row channels %.3g",
             worst_thm4));
  return c.report();
}

bool criterion3() {
  Criterion c("3 tightness witnesses");
  for (double a : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const Channel rr = randomized_response(2, a);
    const double m1 = check_thm1(rr).margin;
    const double m2 = check_thm2(rr).margin;
    c.expect(std::abs(m1) <= 1e-12, fmt("thm1 rr a=%g margin %.3g", a, m1));
    c.expect(std::abs(m2) <= 1e-12, fmt("thm2 rr a=%g margin %.3g", a, m2));
  }
  for (int i = 0; i <= 10; ++i) {
    const double a = i / 10.0;
    const double m3 = check_thm3(z_channel(a)).margin;
    c.expect(std::abs(m3) <= 1e-12, fmt("thm3 z a=%g margin %.3g", a, m3));
  }
  return c.report();
}

bool criterion4() {
  Criterion c("4 TV ratio attains its maximum at point masses");
  const auto tv = FDivergenceSpec::TotalVariation();
  Rng rng(404);
  double worst_excess = -1;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Index k = 2 + Index(s % 6);
    const Channel w = random_channel(k, 2 + Index(s % 5), 1.0, 4000 + s);
    const double eta = dobrushin_coefficient(w);
    double vertex_max = 0;
    for (Index a = 0; a < k; ++a) {
      for (Index b = 0; b < k; ++b) {
        if (a == b) continue;
        vertex_max = std::max(
            vertex_max,
            contraction_ratio(w, point_mass(k, a), point_mass(k, b), tv));
      }
    }
    c.expect(std::abs(vertex_max - eta) <= 1e-12,
             fmt("channel %llu: vertex max %.17g vs %.17g",
                 (unsigned long long)s, vertex_max, eta));
    for (int t = 0; t < 1000; ++t) {
      const auto p0 = random_distribution(rng, k, t % 2 ? 0.3 : 1.0);
      const auto p1 = random_distribution(rng, k, t % 2 ? 0.3 : 1.0);
      const double ratio = contraction_ratio(w, p0, p1, tv);
      if (std::isnan(ratio)) continue;
      worst_excess = std::max(worst_excess, ratio - eta);
      c.expect(ratio <= eta + 1e-10,
               fmt("channel %llu: interior ratio %.17g exceeds %.17g",
                   (unsigned long long)s, ratio, eta));
    }
  }
  c.note(fmt("largest interior ratio minus coefficient %.3g", worst_excess));
  return c.report();
}

bool criterion5() {
  Criterion c("5 KL contraction estimates");
  const auto kl = FDivergenceSpec::KL();
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Channel w =
        random_channel(2 + Index(s % 4), 2 + Index(s % 3), 1.0, 5000 + s);
    const double est = estimate_eta_f(w, kl, 10000, s).value;
    const double eta = dobrushin_coefficient(w);
    c.expect(est <= eta + 1e-10,
             fmt("channel %llu: estimate %.17g above %.17g",
                 (unsigned long long)s, est, eta));
  }
  const Channel rr = randomized_response(2, 1.0);
  const double oracle = oracle_binary_kl_grid(rr);
  const double est = estimate_eta_f(rr, kl, 10000, 0).value;
  c.expect(std::abs(oracle - 1.0 / 9) <= 2e-3,
           fmt("grid oracle %.6f not near 1/9", oracle));
  c.expect(est >= 0.109, fmt("binary rr estimate %.6f below 0.109", est));
  c.expect(est <= 1.0 / 3, fmt("binary rr estimate %.6f above 1/3", est));
  c.expect(std::abs(est - oracle) <= 2e-3,
           fmt("binary rr estimate %.6f vs grid oracle %.6f", est, oracle));
  c.note(fmt("binary rr: estimate %.8f, grid oracle %.8f", est, oracle));
  return c.report();
}

bool criterion6() {
  Criterion c("6 MAP adversary gain and maximal leakage");
  Rng rng(606);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Index k = 2 + Index(s % 5);
    const Channel w = random_channel(k, 2 + Index(s % 4), 0.5, 6000 + s);
    const double maxl = max_leakage(w);
    const double uniform = map_adversary_gain(w, uniform_distribution(k));
    c.expect(std::abs(uniform - maxl) <= 1e-12,
             fmt("channel %llu: uniform gain %.17g vs %.17g",
                 (unsigned long long)s, uniform, maxl));
    for (int t = 0; t < 100; ++t) {
      const auto prior = random_distribution(rng, k, 1.0);
      const double g = map_adversary_gain(w, prior);
      c.expect(g <= maxl + 1e-10,
               fmt("channel %llu: gain %.17g above %.17g",
                   (unsigned long long)s, g, maxl));
    }
  }
  return c.report();
}

bool criterion7() {
  Criterion c("7 staircase risk matches the closed form");
  std::uint64_t seed = 700;
  for (Index k : {2, 3, 5}) {
    for (double a : {0.5, 1.0}) {
      for (std::int64_t n : {100, 1000}) {
        const RiskEstimate r = empirical_risk(
            {k, a, n, 10000, seed++, uniform_distribution(k)});
        c.expect(std::abs(r.mean_risk - r.closed_form) <= 3 * r.std_error,
                 fmt("k=%d a=%g n=%lld: mean %.6g closed %.6g se %.3g",
                     int(k), a, (long long)n, r.mean_risk, r.closed_form,
                     r.std_error));
        const double upper = double(k - 1) / (double(n) * (std::exp2(a) - 1));
        c.expect(r.closed_form <= upper,
                 fmt("k=%d a=%g n=%lld: closed %.6g above %.6g", int(k), a,
                     (long long)n, r.closed_form, upper));
      }
    }
  }
  const RiskEstimate r =
      empirical_risk({3, 1.0, 100, 10000, 1, uniform_distribution(3)});
  c.expect(std::abs(r.closed_form - 1.0 / 60) <= 1e-15,
           fmt("closed form %.17g not 1/60", r.closed_form));
  c.expect(std::abs(r.mean_risk - 1.0 / 60) <= 3 * r.std_error,
           fmt("k=3 mean %.6g vs 1/60 (se %.3g)", r.mean_risk, r.std_error));
  c.note(fmt("k=3 a=1 n=100: mean %.6f +- %.2g, 1/60 = %.6f", r.mean_risk,
             r.std_error, 1.0 / 60));
  return c.report();
}

bool criterion8() {
  Criterion c("8 two-point lower bound at k=2, alpha=1, n=1e4");
  const Index k = 2;
  const double a = 1.0;
  const std::int64_t n = 10000;
  const double m = double(n) * (std::exp2(a) - 1);

  const LeCamPreconditions pre = lecam_preconditions(k, a, n);
  c.expect(pre.pair_ok, fmt("pair precondition needs n >= %lld",
                            (long long)pre.min_n_pair));
  c.expect(pre.taylor_ok,
           fmt("n(2^a-1)D(P1||P0) = %.10f exceeds 1 (smallest n on the "
               "doubling scan: %s)",
               pre.taylor_value,
               pre.min_n_taylor ? std::to_string(*pre.min_n_taylor).c_str()
                                : "none"));

  const LeCamPair pair = lecam_pair(k, a, n, default_direction(k));
  if (!pair.valid) {
    c.expect(false, "pair is not a distribution");
    return c.report();
  }
  const Distribution& p0 = pair.p0;
  const Distribution& p1 = *pair.p1;

  const TwoPointRisk s = two_point_risk(pair, a, n, 10000, 8);
  const double floor = 1.0 / (16.0 * m);
  c.expect(s.s >= floor - 3 * s.std_error,
           fmt("S %.6g below %.6g - 3se", s.s, floor));

  const double dist = l2_distance_sq(p0, p1);
  c.expect(std::abs(dist - 1.0 / m) <= 1e-12 / m,
           fmt("||P0-P1||^2 %.17g vs %.17g", dist, 1.0 / m));

  const Channel w = maxl_staircase(k, a);
  const Distribution q0 = pushforward(w, p0);
  const Distribution q1 = pushforward(w, p1);
  const double tv_n = product_total_variation(q1, q0, n);
  const double lecam = (1 - tv_n) * dist / 4;
  c.expect(s.s >= lecam - 3 * s.std_error,
           fmt("S %.6g below testing bound %.6g - 3se", s.s, lecam));
  c.expect(lecam >= floor, fmt("testing bound %.6g below %.6g (TV %.6f)",
                               lecam, floor, tv_n));

  const double d_out = kl_divergence_nats(q1, q0);
  const double d_in = kl_divergence_nats(p1, p0);
  const double eta = dobrushin_coefficient(w);
  const double pinsker = std::sqrt(double(n) * d_out / 2);
  c.expect(tv_n <= pinsker + 1e-12,
           fmt("product TV %.10f above Pinsker %.10f", tv_n, pinsker));
  c.expect(d_out <= eta * d_in + 1e-15,
           fmt("SDPI: %.6g above %.6g", d_out, eta * d_in));
  c.expect(eta <= std::exp2(a) - 1 + 1e-12,
           fmt("coefficient %.17g above 2^a-1", eta));

  c.note(fmt("S = %.6g +- %.2g, floor 1/(16m) = %.6g, testing bound %.6g",
             s.s, s.std_error, floor, lecam));
  c.note(fmt("product TV %.6f, Pinsker %.6f; every step except the "
             "precondition holds",
             tv_n, pinsker));
  return c.report();
}

bool criterion9() {
  Criterion c("9 normalized risk is flat in n");
  const std::vector<std::int64_t> grid = {100, 200, 400, 800};
  const auto rows = scaling_sweep(3, 1.0, grid, 10000, 900);
  std::vector<double> se;
  for (const auto& r : rows) {
    const double scale = double(r.n) * (std::exp2(r.alpha_bits) - 1);
    se.push_back(r.std_error * scale);
    c.expect(std::abs(r.normalized_risk - 5.0 / 3) <= 3 * se.back(),
             fmt("n=%lld: %.6f vs 5/3 (sigma %.3g)", (long long)r.n,
                 r.normalized_risk, se.back()));
    c.note(fmt("n=%lld normalized %.6f +- %.4f", (long long)r.n,
               r.normalized_risk, se.back()));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const double sigma = std::hypot(se[i], se[j]);
      const double gap = rows[i].normalized_risk - rows[j].normalized_risk;
      c.expect(std::abs(gap) <= 3 * sigma,
               fmt("rows %zu,%zu differ by %.4g (sigma %.3g)", i, j, gap,
                   sigma));
    }
  }
  return c.report();
}

bool run_cli(const std::string& args, std::string& out) {
  const std::string cmd =
      std::string(PRIVMECH_CLI_PATH) + " " + args + " 2>/dev/null";
  out.clear();
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return false;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) {
    out.append(buf, got);
  }
  const int raw = pclose(pipe);
  return WIFEXITED(raw) && WEXITSTATUS(raw) == 0;
}

bool criterion10() {
  Criterion c("10 CLI output is byte-identical across runs");
  const char* commands[] = {
      "construct rr --k 4 --alpha 1.5",
      "construct z --alpha 0.4",
      "construct staircase --k 5 --alpha 2",
      "analyze --json '{\"rows\": [[0.7,0.2,0.1],[0.1,0.6,0.3]]}'",
      "--seed 11 bounds-check --random 4x3 --count 5",
      "simulate --k 3 --alpha 1 --n 100 --replicates 5000 --seed 1",
      "simulate --k 5 --alpha 0.5 --n 300 --replicates 2000 --seed 2 "
      "--format csv",
      "sweep --k 3 --alpha 1 --n-grid 100,200,400 --replicates 2000 --seed 3",
  };
  for (const char* args : commands) {
    std::string a, b;
    const bool ok_a = run_cli(args, a);
    const bool ok_b = run_cli(args, b);
    c.expect(ok_a && ok_b && !a.empty(), fmt("'%s' did not succeed", args));
    c.expect(a == b, fmt("'%s' differs between runs", args));
  }
  return c.report();
}

}  // namespace

int main() {
  bool (*const criteria[])() = {criterion1, criterion2, criterion3,
                                criterion4, criterion5, criterion6,
                                criterion7, criterion8, criterion9,
                                criterion10};
  int failed = 0;
  for (auto run : criteria) {
    try {
      if (!run()) ++failed;
    } catch (const std::exception& e) {
      std::printf("FAIL (exception: %s)\n", e.what());
      ++failed;
    }
    std::fflush(stdout);
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
