// Copyright 2026 The mmreflect Authors
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
// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each check also enforces its wall-clock budget.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mmreflect/backoff.hpp"
#include "mmreflect/geometry.hpp"
#include "mmreflect/grid.hpp"
#include "mmreflect/lidar.hpp"
#include "mmreflect/outage.hpp"
#include "mmreflect/scheduler.hpp"
#include "mmreflect/stats.hpp"
#include "mmreflect/synth.hpp"
#include "test_grids.hpp"

namespace {

using namespace mmreflect;

constexpr std::size_t kSyntheticGrids = 20;
const std::vector<double> kDisplacements = {0.3, 0.9, 1.5, 2.1};
const std::vector<double> kKappas = {0.0, 0.5, 1.0, 2.0};
constexpr std::size_t kTrials = 1000;
constexpr double kDeltaMax = 10.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void report(int id, const char* title, double budget_s,
            const std::function<Outcome()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0 && secs > budget_s) {
    o.pass = false;
    o.detail += " [over budget]";
  }
  if (!o.pass) ++g_failures;
  std::printf("%s  %d. %s: %s (%.2f s", o.pass ? "PASS" : "FAIL", id, title,
              o.detail.c_str(), secs);
  if (budget_s > 0.0) std::printf(" / %.0f s", budget_s);
  std::printf(")\n");
  std::fflush(stdout);
}

std::vector<RssGrid> synthetic_grids() {
  std::vector<RssGrid> grids;
  const SceneConfig scene = SceneConfig::Default();
  for (std::size_t s = 0; s < kSyntheticGrids; ++s) {
    SynthParams p;
    p.seed = s;
    grids.push_back(synthesize_rss_grid(scene, GridSpec::Default(), p));
  }
  return grids;
}

// curves[grid][kappa] over kDisplacements, shared trial seed per grid.
std::vector<std::vector<OutageCurve>> outage_sweep(const std::vector<RssGrid>& grids) {
  const SceneConfig scene = SceneConfig::Default();
  std::vector<std::vector<OutageCurve>> out;
  for (std::size_t g = 0; g < grids.size(); ++g) {
    std::vector<OutageCurve> per_kappa;
    for (const double kappa : kKappas) {
      const BackoffMap map = compute_backoff_map(grids[g], kappa, kDeltaMax);
      per_kappa.push_back(
          estimate_outage(grids[g], map, scene, kDisplacements, kTrials, 1000 + g));
    }
    out.push_back(std::move(per_kappa));
  }
  return out;
}

Outcome check_kappa_monotone() {
  const auto sweep = outage_sweep(synthetic_grids());
  int violations = 0;
  double p0 = 0.0, p2 = 0.0;
  for (const auto& per_kappa : sweep) {
    for (std::size_t k = 1; k < per_kappa.size(); ++k) {
      for (std::size_t d = 0; d < kDisplacements.size(); ++d) {
        if (per_kappa[k].p_out[d] > per_kappa[k - 1].p_out[d]) ++violations;
      }
    }
    p0 += per_kappa.front().p_out.back() / sweep.size();
    p2 += per_kappa.back().p_out.back() / sweep.size();
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%d violations over %zu grids; mean P_out at 2.1 m %.3f (k=0) -> %.3f (k=2)",
                violations, sweep.size(), p0, p2);
  return {violations == 0, buf};
}

Outcome check_displacement_monotone() {
  const auto sweep = outage_sweep(synthetic_grids());
  int violations = 0;
  for (const auto& per_kappa : sweep) {
    for (const auto& curve : per_kappa) {
      for (std::size_t d = 1; d < curve.p_out.size(); ++d) {
        if (curve.p_out[d] < curve.p_out[d - 1]) ++violations;
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations over " +
                               std::to_string(sweep.size() * kKappas.size()) +
                               " curves"};
}

Outcome check_monte_carlo() {
  constexpr std::size_t kMcTrials = 100000;
  constexpr double kTol = 0.01;
  double worst = 0.0;
  for (std::uint64_t g = 0; g < 10; ++g) {
    const RssGrid grid = testing::random_grid(500 + g, 4, 4, 0.25);
    if (grid.spec().valid_count() > 16) return {false, "grid too large"};
    const SceneConfig scene = testing::scene_with_target(-0.3, 1.5);
    const BackoffMap map = compute_backoff_map(grid, 1.0, kDeltaMax);
    const double pitch = grid.spec().cell_size();
    const std::vector<double> disp = {pitch, 2.0 * pitch};
    const OutageCurve mc = estimate_outage(grid, map, scene, disp, kMcTrials, 77 + g);
    for (std::size_t n = 1; n <= 2; ++n) {
      const double exact = brute_force_outage(grid, map, scene, n);
      worst = std::max(worst, std::abs(mc.p_out[n - 1] - exact));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max |MC - exact| = %.4f (tol %.2f)", worst, kTol);
  return {worst <= kTol, buf};
}

Outcome check_diversity() {
  constexpr std::size_t kInstances = 10000;
  constexpr double kSlack = 0.02;
  const std::vector<std::size_t> ks = {1, 2, 4};
  const auto grids = synthetic_grids();
  int failures = 0;
  double worst_gap = 0.0;
  for (std::size_t g = 0; g < 10; ++g) {
    const RssGrid& grid = grids[g];
    const CellSet region = high_rss_region(grid, 0.25);
    DiversityOptions opts;
    opts.thresholds = default_thresholds(grid.values());
    std::vector<CcdfCurve> curves;
    for (const std::size_t k : ks) {
      curves.push_back(diversity_ccdf(grid, region, k, kInstances, 300 + g, opts));
    }
    for (std::size_t i = 1; i < curves.size(); ++i) {
      if (!dominates(curves[i], curves[i - 1], kSlack)) ++failures;
      for (std::size_t j = 0; j < curves[i].prob.size(); ++j) {
        worst_gap = std::max(worst_gap, curves[i - 1].prob[j] - curves[i].prob[j]);
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "%d failing pairs over 10 grids; worst shortfall %.4f (slack %.2f)",
                failures, worst_gap, kSlack);
  return {failures == 0, buf};
}

Outcome check_materials() {
  const MaterialKind kinds[] = {MaterialKind::kSilver, MaterialKind::kSilverCoatedMirror,
                                MaterialKind::kCopper, MaterialKind::kFoam};
  std::vector<std::vector<double>> samples;
  std::vector<double> pooled;
  SynthParams params;
  params.seed = 11;
  for (const MaterialKind m : kinds) {
    SceneConfig scene = SceneConfig::Default();
    scene.panel.material = m;
    samples.push_back(synthesize_rss_grid(scene, GridSpec::Default(), params).values());
    pooled.insert(pooled.end(), samples.back().begin(), samples.back().end());
  }
  const auto thresholds = default_thresholds(pooled);
  std::vector<CcdfCurve> c;
  for (const auto& s : samples) c.push_back(ccdf(s, thresholds));
  const bool silver = dominates(c[0], c[1], 0.0);
  const bool equal = c[1].prob == c[2].prob;
  const bool foam = dominates(c[1], c[3], 0.0);
  return {silver && equal && foam,
          std::string("silver>=mirror ") + (silver ? "yes" : "no") +
              ", mirror==copper " + (equal ? "yes" : "no") + ", mirror>=foam " +
              (foam ? "yes" : "no")};
}

Outcome check_lidar() {
  // Sizes are vertical x horizontal; the horizontal extent is the one swept.
  const double widths[] = {0.9, 0.6, 0.3};
  std::vector<double> cov;
  const GridSpec spec = GridSpec::Default();
  for (const double w : widths) {
    SceneConfig scene = SceneConfig::Default();
    scene.panel.width = w;
    scene.panel.height = 0.3;
    cov.push_back(coverage_fraction(scene, LidarConfig::FromScene(scene), spec).coverage);
  }
  SceneConfig huge = SceneConfig::Default();
  huge.panel.width = 10.0;
  huge.panel.height = 10.0;
  const double full =
      coverage_fraction(huge, LidarConfig::FromScene(huge), spec).coverage;
  const bool ok = cov[0] > cov[1] && cov[1] > cov[2] && full == 1.0;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "coverage %.3f / %.3f / %.3f, 10x10 m -> %.3f",
                cov[0], cov[1], cov[2], full);
  return {ok, buf};
}

// Average ranks, computed independently of the library.
std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0.0, equal = 0.0;
    for (const double x : v) {
      less += x < v[i];
      equal += x == v[i];
    }
    r[i] = less + (equal + 1.0) / 2.0;
  }
  return r;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i] / n;
    mb += b[i] / n;
  }
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

Outcome check_backoff_pattern() {
  constexpr double kMaxRho = -0.99;
  double worst = -1.0;
  double worst_uncapped = -1.0;
  int failing_grids = 0;
  int order_violations = 0;
  for (const RssGrid& grid : synthetic_grids()) {
    const BackoffMap map = compute_backoff_map(grid, 1.0, kDeltaMax);
    std::vector<double> g, delta, g_free, delta_free;
    for (const auto& c : grid.spec().valid_cells()) {
      g.push_back(normalized_neighborhood_power(grid, c));
      delta.push_back(map.at(c));
      if (delta.back() < kDeltaMax) {
        g_free.push_back(g.back());
        delta_free.push_back(delta.back());
      }
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        if (g[i] < g[j] && delta[i] < delta[j]) ++order_violations;
      }
    }
    const double rho = pearson(ranks(g), ranks(delta));
    if (rho > kMaxRho) ++failing_grids;
    worst = std::max(worst, rho);
    if (g_free.size() > 2) {
      worst_uncapped =
          std::max(worst_uncapped, pearson(ranks(g_free), ranks(delta_free)));
    }
  }
  // Cells at the delta_max cap tie in rank, so the full-grid statistic can
  // sit above the bound even when the ordering is exact.
  char buf[224];
  std::snprintf(buf, sizeof(buf),
                "max Spearman(delta, g) = %.4f (need <= %.2f), %d/%zu grids "
                "over; %d order violations; uncapped cells max %.4f",
                worst, kMaxRho, failing_grids, kSyntheticGrids, order_violations,
                worst_uncapped);
  return {worst <= kMaxRho && order_violations == 0, buf};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome check_cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() /
                       ("mmreflect_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto run = [&](const std::string& args, const std::string& out) {
    const std::string cmd = "cd '" + dir.string() + "' && '" MMREFLECT_CLI_PATH
                            "' " + args + " --out " + out + " 2>> stderr.txt";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) && WEXITSTATUS(raw) == 0;
  };
  if (!run("synth-grid --seed 9", "grid.csv")) return {false, "synth-grid failed"};
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"synth-grid", "synth-grid --seed 4"},
      {"import-grid", "import-grid --grid grid.csv"},
      {"backoff-map", "backoff-map --grid grid.csv --kappa 2"},
      {"outage", "outage --grid grid.csv --seed 4"},
      {"schedule", "schedule --grid grid.csv --seed 4"},
      {"lidar-coverage", "lidar-coverage --widths 0.9,0.6,0.3"},
      {"ccdf", "ccdf --input grid.csv"},
  };
  std::string mismatches;
  for (const auto& [name, args] : commands) {
    const std::string a = name + "_a.csv", b = name + "_b.csv", c = name + "_t8.csv";
    if (!run(args + " --threads 1", a) || !run(args + " --threads 1", b) ||
        !run(args + " --threads 8", c)) {
      fs::remove_all(dir);
      return {false, name + " exited nonzero"};
    }
    const std::string ref = slurp(dir / a);
    if (ref.empty() || ref != slurp(dir / b) || ref != slurp(dir / c)) {
      mismatches += " " + name;
    }
  }
  fs::remove_all(dir);
  if (!mismatches.empty()) return {false, "output differs for" + mismatches};
  return {true, std::to_string(commands.size()) +
                    " subcommands identical across reruns and --threads 1/8"};
}

// Plane frame rebuilt from the azimuth, independent of the library.
struct Frame {
  Point3 c, n, t;
  double w, h;
};

Frame frame_of(const ReflectorPanel& p) {
  const double a = p.azimuth_deg * std::numbers::pi / 180.0;
  return {p.center, {-std::sin(a), std::cos(a), 0.0}, {std::cos(a), std::sin(a), 0.0},
          p.width, p.height};
}

double side(const Frame& f, const Point3& x) {
  return (x.x - f.c.x) * f.n.x + (x.y - f.c.y) * f.n.y + (x.z - f.c.z) * f.n.z;
}

Point3 lerp(const Point3& a, const Point3& b, double t) {
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)};
}

// Returns 1/0 for hit/miss, or -1 when the case lies within `band` of an
// edge or of the plane, where the answer is not meaningful.
int dense_oracle(const Frame& f, const Point3& a, const Point3& b, double band) {
  constexpr int kSamples = 20000;
  if (std::abs(side(f, a)) < band || std::abs(side(f, b)) < band) return -1;
  double prev_t = 0.0;
  double prev_s = side(f, a);
  for (int k = 1; k <= kSamples; ++k) {
    const double t = static_cast<double>(k) / kSamples;
    const double s = side(f, lerp(a, b, t));
    if ((s > 0.0) != (prev_s > 0.0)) {
      double lo = prev_t, hi = t;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((side(f, lerp(a, b, mid)) > 0.0) == (prev_s > 0.0)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const Point3 x = lerp(a, b, 0.5 * (lo + hi));
      const double u = (x.x - f.c.x) * f.t.x + (x.y - f.c.y) * f.t.y;
      const double v = x.z - f.c.z;
      const double margin = std::min(f.w / 2 - std::abs(u), f.h / 2 - std::abs(v));
      if (std::abs(margin) < band) return -1;
      return margin > 0.0 ? 1 : 0;
    }
    prev_t = t;
    prev_s = s;
  }
  return 0;
}

Outcome check_geometry() {
  std::mt19937_64 gen(20260101);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  std::uniform_real_distribution<double> az(1.0, 89.0);
  std::uniform_real_distribution<double> size(0.1, 2.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto random_panel = [&] {
    ReflectorPanel p;
    p.center = {coord(gen), coord(gen), 1.0 + std::abs(coord(gen)) / 5.0};
    p.azimuth_deg = az(gen);
    p.width = size(gen);
    p.height = size(gen);
    return p;
  };
  auto random_point = [&] { return Point3{coord(gen), coord(gen), coord(gen)}; };

  int iso_failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const ReflectorPanel panel = random_panel();
    const Point3 p = random_point(), q = random_point();
    const Point3 ip = image_point(p, panel), iq = image_point(q, panel);
    const Point3 back = image_point(ip, panel);
    const bool involution = distance(back, p) <= 1e-9;
    const bool isometry = std::abs(distance(ip, iq) - distance(p, q)) <= 1e-9;
    const bool flips =
        std::abs(signed_distance(ip, panel) + signed_distance(p, panel)) <= 1e-9;
    if (!(involution && isometry && flips)) ++iso_failures;
  }

  int disagreements = 0, hits = 0, banded = 0;
  for (int i = 0; i < 1000; ++i) {
    const ReflectorPanel panel = random_panel();
    const Frame f = frame_of(panel);
    Point3 a = random_point(), b;
    if (i % 2 == 0) {
      b = random_point();
    } else {
      // Aim through a point near the panel so hits are common.
      const Point3 aim = f.c + (unit(gen) * 0.7 * f.w) * f.t +
                         Point3{0.0, 0.0, unit(gen) * 0.7 * f.h};
      b = a + (1.0 + std::abs(unit(gen)) * 2.0) * (aim - a);
    }
    if (distance(a, b) < 1e-6) continue;
    const int expect = dense_oracle(f, a, b, 1e-6);
    if (expect < 0) {
      ++banded;
      continue;
    }
    hits += expect;
    if (segment_intersects_panel(a, b, panel) != (expect == 1)) ++disagreements;
  }
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "%d/10000 image checks failed at 1e-9 m; %d/1000 segment "
                "disagreements (%d hits, %d in boundary band)",
                iso_failures, disagreements, hits, banded);
  return {iso_failures == 0 && disagreements == 0, buf};
}

}  // namespace

int main() {
  report(1, "back-off reduces outage", 30, check_kappa_monotone);
  report(2, "outage grows with displacement", 10, check_displacement_monotone);
  report(3, "Monte Carlo matches exact enumeration", 60, check_monte_carlo);
  report(4, "multi-user diversity dominance", 60, check_diversity);
  report(5, "material ordering", 10, check_materials);
  report(6, "LiDAR coverage ordering", 10, check_lidar);
  report(7, "back-off spatial pattern", 5, check_backoff_pattern);
  report(8, "CLI determinism and parallel safety", 60, check_cli_determinism);
  report(9, "geometry kernel", 0, check_geometry);
  std::printf("%s: %d of 9 criteria failed\n", g_failures == 0 ? "ACCEPTED" : "REJECTED",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
