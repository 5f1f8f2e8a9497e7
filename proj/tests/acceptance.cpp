// Acceptance gate: one line per criterion, pass/fail decided by the pinned
// tolerances and runtime budgets. Exits with the number of failed criteria.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "testutil.hpp"

using namespace fractaldim;
namespace fs = std::filesystem;

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
      .count();
}

struct Line {
  bool pass = false;
  std::string detail;
};

Ifs sierpinski() {
  Mat id = Mat::identity(2);
  return Ifs({
      Similarity(0.5, id, {0.0, 0.0}),
      Similarity(0.5, id, {0.5, 0.0}),
      Similarity(0.5, id, {0.25, 0.5}),
  });
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

// ---- criterion 1: Moran solver exactness -----------------------------------

Line criterion1() {
  auto t0 = clock_type::now();
  MoranSolution cantor = moran_exponent({1.0 / 3.0, 1.0 / 3.0});
  double ms_cantor = ms_since(t0);

  auto t1 = clock_type::now();
  MoranSolution sier = moran_exponent({0.5, 0.5, 0.5});
  double ms_sier = ms_since(t1);

  double d_cantor = std::abs(cantor.s - 0.6309297535714574);
  double d_sier = std::abs(sier.s - 1.5849625007211563);
  long double d_oracle = std::abs(static_cast<long double>(sier.s) -
                                  testutil::moran_oracle({0.5, 0.5, 0.5}));

  Line l;
  l.pass = d_cantor <= 1e-12 && d_sier <= 1e-12 && d_oracle <= 1e-12L &&
           ms_cantor < 1.0 && ms_sier < 1.0;
  l.detail = fmt(
      "cantor |s - log2/log3| = %.2e, sierpinski |s - log3/log2| = %.2e, "
      "bisection-oracle gap = %.2e, runtimes %.3f ms / %.3f ms (< 1 ms)",
      d_cantor, d_sier, static_cast<double>(d_oracle), ms_cantor, ms_sier);
  return l;
}

// ---- criterion 2: no-OSC dim3 with H3 jump ----------------------------------

Line criterion2() {
  Mat id = Mat::identity(1);
  Ifs pair({Similarity(2.0 / 3.0, id, {0.0}),
            Similarity(2.0 / 3.0, id, {1.0 / 3.0})});
  auto t0 = clock_type::now();
  Dim3Result r = dim3(pair);
  double ms = ms_since(t0);

  double target = 1.7095112913514547;  // log 2 / log(3/2)
  double gap = std::abs(r.moran.s - target);
  bool jump = r.jump_verified && r.below_class && r.above_class &&
              *r.below_class == HClass::infinite &&
              *r.above_class == HClass::zero;

  Line l;
  l.pass = gap <= 1e-9 && jump && ms < 10.0;
  l.detail = fmt(
      "|dim3 - log2/log(3/2)| = %.2e (<= 1e-9), H3 class at s-0.05 = %s, at "
      "s+0.05 = %s, runtime %.3f ms (< 10 ms)",
      gap, r.below_class ? to_string(*r.below_class) : "absent",
      r.above_class ? to_string(*r.above_class) : "absent", ms);
  return l;
}

// ---- criterion 3: H3 value at the Moran exponent ----------------------------

Line criterion3() {
  auto t0 = clock_type::now();
  Ifs ifs = sierpinski();
  DiameterBound diam = diameter_interval(ifs, 12);
  double s = moran_exponent(ifs.ratios()).s;
  HDirectValue direct = h_functional_level_direct(ifs, 12, s, diam.interval, 2);
  double ms = ms_since(t0);

  double band_lo = std::pow(diam.interval.lo, s);
  double band_hi = std::pow(diam.interval.hi, s);
  bool inside = direct.value.hi >= band_lo * (1.0 - 1e-12) &&
                direct.value.lo <= band_hi * (1.0 + 1e-12);
  double width_rel = (direct.value.hi - direct.value.lo) / direct.value.lo;
  double sums_gap = 0.0;
  for (double v : direct.level_sums_rel)
    sums_gap = std::max(sums_gap, std::abs(v - 1.0));

  Line l;
  l.pass = inside && width_rel <= 0.01 && sums_gap <= 1e-9 && ms < 5000.0;
  l.detail = fmt(
      "H3 direct in [%.12f, %.12f] vs diam^s band [%.12f, %.12f], interval "
      "width %.3e%% (<= 1%%), level-sum drift %.2e, runtime %.0f ms (< 5 s)",
      direct.value.lo, direct.value.hi, band_lo, band_hi, width_rel * 100.0,
      sums_gap, ms);
  return l;
}

// ---- criterion 4: Kraft identity over random antichains ---------------------

Line criterion4() {
  auto t0 = clock_type::now();
  auto gen = testutil::rng(40404);
  std::uniform_int_distribution<int> kk(2, 5);
  std::uniform_int_distribution<int> splits(1, 40);
  double worst = 0.0;
  int checked = 0;
  for (int sys = 0; sys < 20; ++sys) {
    int k = kk(gen);
    Ifs ifs = testutil::random_ifs(gen, k, 1);
    double s = moran_exponent(ifs.ratios()).s;
    for (int rep = 0; rep < 5; ++rep) {
      Antichain a(static_cast<std::uint32_t>(k),
                  testutil::random_complete_antichain(
                      gen, static_cast<std::uint32_t>(k), splits(gen)));
      worst = std::max(worst, std::abs(antichain_weight(ifs, a, s) - 1.0));
      ++checked;
    }
  }
  double ms = ms_since(t0);
  Line l;
  l.pass = checked == 100 && worst <= 1e-9 && ms < 1000.0;
  l.detail = fmt(
      "%d antichains on 20 random systems, worst |weight - 1| = %.2e (<= "
      "1e-9), runtime %.1f ms (< 1 s)",
      checked, worst, ms);
  return l;
}

// ---- criterion 5: equal-ratio chain ------------------------------------------

Line criterion5() {
  auto t0 = clock_type::now();
  auto gen = testutil::rng(50505);
  std::uniform_int_distribution<int> kk(2, 6);
  std::uniform_real_distribution<double> ratio(0.15, 0.8);
  Mat id = Mat::identity(1);
  Interval unit{1.0, 1.0};
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    int k = kk(gen);
    double c = ratio(gen);
    std::vector<Similarity> maps;
    for (int i = 0; i < k; ++i)
      maps.push_back(Similarity(c, id, {static_cast<double>(i)}));
    Ifs ifs(maps);

    double target = -std::log(static_cast<double>(k)) / std::log(c);
    double gamma_c = -std::log(2.0) / std::log(c);
    worst = std::max(worst, std::abs(dim2(ifs, unit).value - target));
    worst = std::max(worst, std::abs(dim3(ifs).moran.s - target));
    worst = std::max(worst, std::abs(gamma_c * dim1(ifs).value - target));
  }
  double ms = ms_since(t0);
  Line l;
  l.pass = worst <= 1e-9 && ms < 1000.0;
  l.detail = fmt(
      "50 equal-ratio systems, worst |dim2,dim3,gamma_c*dim1 - (-log k/log "
      "c)| = %.2e (<= 1e-9), runtime %.1f ms (< 1 s)",
      worst, ms);
  return l;
}

// ---- criterion 6: box-count estimator ----------------------------------------

Line criterion6() {
  auto t0 = clock_type::now();
  std::vector<double> scales;
  for (int m = 3; m <= 9; ++m) scales.push_back(std::pow(2.0, -m));

  PointCloud gasket = chaos_game(sierpinski(), 1000000, 1);
  double gasket_slope = box_dimension_estimate(gasket, scales).grid.slope;

  std::vector<double> coords;
  coords.reserve(2000000);
  for (int i = 0; i < 1000; ++i)
    for (int j = 0; j < 1000; ++j) {
      coords.push_back(i / 999.0);
      coords.push_back(j / 999.0);
    }
  PointCloud square(2, std::move(coords), SyntheticProvenance{"square"});
  double square_slope = box_dimension_estimate(square, scales).grid.slope;
  double ms = ms_since(t0);

  Line l;
  l.pass = gasket_slope >= 1.53 && gasket_slope <= 1.63 &&
           square_slope >= 1.95 && square_slope <= 2.0 && ms < 60000.0;
  l.detail = fmt(
      "sierpinski 10^6-point grid slope = %.4f (in [1.53, 1.63], oracle "
      "1.58496), square control slope = %.4f (in [1.95, 2.0]), runtime %.0f "
      "ms (< 60 s)",
      gasket_slope, square_slope, ms);
  return l;
}

// ---- criterion 7: dims IV-VI bounds and H ordering ---------------------------

Line criterion7() {
  auto t0 = clock_type::now();
  Ifs sier = sierpinski();
  double s_star = moran_exponent(sier.ratios()).s;
  Dims456Result b = dims456_upper(sier, 2, 2000);
  bool sier_ok = b.dim4_upper >= s_star - 1e-9 &&
                 b.dim4_upper <= s_star + b.grid_step + 1e-9 &&
                 b.dim4_upper == b.dim5_upper && b.dim5_upper == b.dim6_upper;

  // Ordering sweep. When S(s) >= 1 the closed functional is finite and the
  // greedy bound must not exceed it. When S(s) < 1 the closed infimum is 0,
  // which no finite antichain attains: the bound is checked as nonnegative
  // and decreasing in budget (0-trending) instead.
  auto gen = testutil::rng(70707);
  std::uniform_int_distribution<int> kk(2, 4);
  Interval unit{1.0, 1.0};
  bool order_ok = true;
  int finite_side = 0, zero_side = 0;
  for (int sys = 0; sys < 20 && order_ok; ++sys) {
    Ifs ifs = testutil::random_ifs(gen, kk(gen), 1);
    double s_hi = moran_exponent(ifs.ratios()).s * 1.3 + 0.05;
    for (int g = 0; g < 20; ++g) {
      double s = s_hi * (g + 1) / 20.0;
      AntichainBound bound = h_upper_bound_antichain(ifs, 2, s, 150, unit);
      HLevelValue closed = h_functional_level(ifs, 2, s, unit);
      if (closed.cls != HClass::zero) {
        ++finite_side;
        if (bound.value.hi > closed.value.hi * (1.0 + 1e-9) + 1e-300) {
          order_ok = false;
          break;
        }
      } else {
        ++zero_side;
        AntichainBound deeper = h_upper_bound_antichain(ifs, 2, s, 300, unit);
        if (!(bound.rel_weight >= 0.0) ||
            deeper.rel_weight > bound.rel_weight * (1.0 + 1e-12)) {
          order_ok = false;
          break;
        }
      }
    }
  }
  double ms = ms_since(t0);

  Line l;
  l.pass = sier_ok && order_ok && ms < 30000.0;
  l.detail = fmt(
      "sierpinski IV-VI bound %.4f within one grid step of dim3 %.6f; "
      "ordering vs closed H3 on 20x20 grid: %d finite-side <= checks, %d "
      "zero-side 0-trending checks (closed infimum 0 is not attainable at "
      "finite budget), runtime %.0f ms (< 30 s)",
      b.dim4_upper, s_star, finite_side, zero_side, ms);
  return l;
}

// ---- criterion 8: OSC certificates -------------------------------------------

int run_cli(const std::string& args) {
  const char* cli = std::getenv("FRACTALDIM_CLI");
  if (!cli) return -1;
  std::string cmd = std::string(cli) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Line criterion8() {
  auto t0 = clock_type::now();
  const char* samples = std::getenv("FRACTALDIM_SAMPLES");
  std::string sdir = samples ? samples : "samples";

  int exit_ok = run_cli("osc " + sdir + "/sierpinski.json");
  int exit_overlap = run_cli("osc " + sdir + "/overlap_plane.json");

  // In-library double check including the witness.
  ConvexPolygon tri({{0.0, 0.0}, {1.0, 0.0}, {0.5, 1.0}});
  bool tri_holds = verify_certificate(sierpinski(), tri).holds;

  Mat id = Mat::identity(2);
  Ifs pair({Similarity(2.0 / 3.0, id, {0.0, 0.0}),
            Similarity(2.0 / 3.0, id, {1.0 / 3.0, 0.0})});
  ConvexPolygon rect({{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.5}, {0.0, 0.5}});
  CertificateVerdict v = verify_certificate(pair, rect);
  bool witness_ok = !v.holds && !v.violations.empty() &&
                    v.violations[0].kind == Violation::Kind::overlap &&
                    v.violations[0].witness.has_value();

  // SAT vs dense sampling, 200 random pairs.
  auto gen = testutil::rng(80808);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int contradictions = 0, disjoint_pairs = 0;
  for (int rep = 0; rep < 200; ++rep) {
    ConvexPolygon a = testutil::random_convex_polygon(gen);
    ConvexPolygon bb = testutil::random_convex_polygon(gen);
    if (rep % 2 == 1) {
      std::vector<Point2> moved;
      for (const auto& vv : bb.vertices()) moved.push_back({vv.x + 4.0, vv.y});
      bb = ConvexPolygon(moved);
    }
    DisjointResult d = interiors_disjoint(a, bb);
    if (!d.disjoint) continue;
    ++disjoint_pairs;
    const auto& av = a.vertices();
    for (int probe = 0; probe < 10000; ++probe) {
      // Fan-triangle sample in a.
      std::vector<double> areas;
      for (std::size_t i = 1; i + 1 < av.size(); ++i)
        areas.push_back(std::abs((av[i].x - av[0].x) * (av[i + 1].y - av[0].y) -
                                 (av[i].y - av[0].y) * (av[i + 1].x - av[0].x)));
      std::discrete_distribution<std::size_t> pick(areas.begin(), areas.end());
      std::size_t t = pick(gen) + 1;
      double r1 = std::sqrt(unit(gen)), r2 = unit(gen);
      double w0 = 1.0 - r1, w1 = r1 * (1.0 - r2), w2 = r1 * r2;
      Point2 p{w0 * av[0].x + w1 * av[t].x + w2 * av[t + 1].x,
               w0 * av[0].y + w1 * av[t].y + w2 * av[t + 1].y};
      bool interior = true;
      const auto& bv = bb.vertices();
      for (std::size_t i = 0; i < bv.size() && interior; ++i) {
        const Point2& p0 = bv[i];
        const Point2& p1 = bv[(i + 1) % bv.size()];
        double len = std::hypot(p1.x - p0.x, p1.y - p0.y);
        double cross =
            (p1.x - p0.x) * (p.y - p0.y) - (p1.y - p0.y) * (p.x - p0.x);
        if (cross / len <= 1e-9) interior = false;
      }
      if (interior) {
        ++contradictions;
        break;
      }
    }
  }
  double ms = ms_since(t0);

  Line l;
  l.pass = exit_ok == 0 && exit_overlap == 1 && tri_holds && witness_ok &&
           contradictions == 0 && ms < 10000.0;
  l.detail = fmt(
      "sierpinski certificate exit %d (want 0), overlap rectangle exit %d "
      "(want 1) with interior witness %s, SAT vs 10^4-sample oracle on 200 "
      "pairs (%d disjoint): %d contradictions, runtime %.0f ms (< 10 s)",
      exit_ok, exit_overlap, witness_ok ? "present" : "missing",
      disjoint_pairs, contradictions, ms);
  return l;
}

// ---- criterion 9: report determinism -----------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Line criterion9() {
  auto t0 = clock_type::now();
  const char* cli = std::getenv("FRACTALDIM_CLI");
  const char* samples = std::getenv("FRACTALDIM_SAMPLES");
  Line l;
  if (!cli) {
    l.pass = false;
    l.detail = "FRACTALDIM_CLI not set; cannot run the cli twice";
    return l;
  }
  std::string sdir = samples ? samples : "samples";
  auto dir = fs::temp_directory_path() / "fractaldim_acceptance";
  fs::create_directories(dir);
  auto o1 = dir / "run1.json";
  auto o2 = dir / "run2.json";
  std::string base = std::string(cli) + " dims " + sdir +
                     "/sierpinski.json --seed 1 --out ";
  int c1 = std::system((base + o1.string() + " > /dev/null 2>&1").c_str());
  int c2 = std::system((base + o2.string() + " > /dev/null 2>&1").c_str());

  bool ran = WIFEXITED(c1) && WEXITSTATUS(c1) == 0 && WIFEXITED(c2) &&
             WEXITSTATUS(c2) == 0;
  bool json_same = false, csv_same = false;
  if (ran) {
    std::ifstream i1(o1), i2(o2);
    nlohmann::json j1 = nlohmann::json::parse(i1);
    nlohmann::json j2 = nlohmann::json::parse(i2);
    j1.erase("timings");
    j2.erase("timings");
    json_same = j1.dump() == j2.dump();
    csv_same = slurp(dir / "run1.dim1_sequence.csv") ==
                   slurp(dir / "run2.dim1_sequence.csv") &&
               slurp(dir / "run1.dim2_sequence.csv") ==
                   slurp(dir / "run2.dim2_sequence.csv") &&
               slurp(dir / "run1.box_counts.csv") ==
                   slurp(dir / "run2.box_counts.csv");
  }
  double ms = ms_since(t0);
  l.pass = ran && json_same && csv_same;
  l.detail = fmt(
      "two cmd_dims runs with seed 1: %s, reports identical after dropping "
      "timings: %s, csv outputs byte-identical: %s (runtime %.0f ms)",
      ran ? "both exit 0" : "run failed", json_same ? "yes" : "no",
      csv_same ? "yes" : "no", ms);
  return l;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Line (*fn)();
  };
  const Entry entries[] = {
      {"moran solver exactness", criterion1},
      {"no-OSC dim3 with H3 jump", criterion2},
      {"H3 value at the Moran exponent", criterion3},
      {"Kraft identity on random antichains", criterion4},
      {"equal-ratio chain", criterion5},
      {"box-count estimator", criterion6},
      {"dims IV-VI bounds and H ordering", criterion7},
      {"OSC certificate verification", criterion8},
      {"report determinism", criterion9},
  };
  int failed = 0;
  int idx = 0;
  for (const auto& e : entries) {
    ++idx;
    Line l = e.fn();
    std::printf("criterion %d (%s): %s [%s]\n", idx, e.name,
                l.pass ? "PASS" : "FAIL", l.detail.c_str());
    std::fflush(stdout);
    if (!l.pass) ++failed;
  }
  std::printf("acceptance: %d/9 passed\n", 9 - failed);
  return failed;
}
