#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fractaldim/fractaldim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCertificateViolated = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitCapExceeded = 3;

std::uint64_t enum_cap_from_env() {
  const char* env = std::getenv("FRACTALDIM_ENUM_CAP");
  if (!env || !*env) return fractaldim::kDefaultEnumCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0)
    throw fractaldim::invalid_input(
        "FRACTALDIM_ENUM_CAP must be a positive integer, got '" +
        std::string(env) + "'");
  return static_cast<std::uint64_t>(v);
}

std::string g16(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16g", v);
  return buf;
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_moran(const std::string& spec_path, double tol) {
  const fractaldim::LoadedSpec loaded = fractaldim::load_spec_file(spec_path);
  const fractaldim::MoranSolution sol =
      fractaldim::moran_exponent(loaded.spec.ifs.ratios(), tol);
  std::cout << "s = " << g16(sol.s) << "\n";
  std::cout << "residual = " << g16(sol.residual) << "\n";
  std::cout << "method = " << fractaldim::to_string(sol.method) << "\n";
  if (sol.method == fractaldim::MoranMethod::bisection)
    std::cout << "iterations = " << sol.iterations << "\n";
  return kExitOk;
}

int cmd_dims(const std::string& spec_path, const fractaldim::ReportOptions& opts,
             const std::string& out_path) {
  const fractaldim::LoadedSpec loaded = fractaldim::load_spec_file(spec_path);
  const fractaldim::DimensionReport report =
      fractaldim::compute_report(loaded.spec.ifs, loaded.spec.certificate, opts);
  const auto written =
      fractaldim::write_report_files(report, loaded.hash_hex, out_path);

  std::cout << "IFS: k = " << report.k << ", dim = " << report.dim
            << (report.equal_ratio ? ", equal ratios" : ", mixed ratios")
            << ", c_max = " << g16(report.c_max) << "\n";
  std::cout << "diam(K) in [" << g16(report.diam.lo) << ", " << g16(report.diam.hi)
            << "]"
            << (report.diam_overridden
                    ? " (override)"
                    : " (depth " + std::to_string(report.diam_depth) + ")")
            << "\n";
  std::cout << "dim1 = " << g16(report.dim1.value) << "\n";
  std::cout << "dim2 = " << g16(report.dim2.value) << "\n";
  std::cout << "dim3 = " << g16(report.dim3.moran.s) << " ("
            << fractaldim::to_string(report.dim3.moran.method) << ", residual "
            << g16(report.dim3.moran.residual) << ", jump "
            << (report.dim3.jump_verified ? "verified" : "NOT verified") << ")\n";
  std::cout << "dims IV-VI upper bound = " << g16(report.dims456.dim4_upper)
            << " (grid step " << g16(report.dims456.grid_step) << ", budget "
            << report.dims456.budget << ")\n";
  std::cout << "H3 at s* (level " << report.h3_level << ") in ["
            << g16(report.h3.value.lo) << ", " << g16(report.h3.value.hi)
            << "], class " << fractaldim::to_string(report.h3.cls)
            << ", direct-enumeration agreement " << g16(report.h3_agreement_rel)
            << "\n";
  if (!report.box.grid.degenerate || !report.box.counts.scales.empty()) {
    std::cout << "box dimension: grid slope = " << g16(report.box.grid.slope)
              << " +- " << g16(report.box.grid.stderr_slope)
              << ", packing slope = " << g16(report.box.packing.slope) << " ("
              << report.box_points << " chaos points, seed " << report.box_seed
              << ")\n";
  } else {
    std::cout << "box dimension: not estimated";
    for (const auto& n : report.box_notes) std::cout << " (" << n << ")";
    std::cout << "\n";
  }
  std::cout << "OSC certificate: " << report.osc_status << "\n";
  for (const auto& c : report.crosschecks)
    std::cout << "crosscheck " << c.name << ": " << c.status
              << (c.detail.empty() ? "" : " [" + c.detail + "]") << "\n";
  std::cout << "wrote";
  for (const auto& p : written) std::cout << " " << p;
  std::cout << "\n";
  return kExitOk;
}

int cmd_osc(const std::string& spec_path) {
  const fractaldim::LoadedSpec loaded = fractaldim::load_spec_file(spec_path);
  if (!loaded.spec.certificate)
    throw fractaldim::invalid_input("spec has no 'certificate' field");
  const fractaldim::CertificateVerdict verdict = fractaldim::verify_certificate(
      loaded.spec.ifs, *loaded.spec.certificate);
  if (verdict.holds) {
    std::cout << "certificate holds\n";
    std::cout << "min containment margin = " << g16(verdict.min_containment_margin)
              << "\n";
    if (verdict.min_separation)
      std::cout << "min pairwise separation = " << g16(*verdict.min_separation)
                << "\n";
    return kExitOk;
  }
  std::cout << "certificate violated (" << verdict.violations.size()
            << " violation(s))\n";
  for (const auto& v : verdict.violations) {
    std::cout << "- " << v.detail;
    if (v.witness)
      std::cout << " witness (" << g16(v.witness->x) << ", " << g16(v.witness->y)
                << ")";
    std::cout << "\n";
  }
  return kExitCertificateViolated;
}

int cmd_points(const std::string& spec_path, const std::string& mode, int depth,
               std::uint64_t count, std::uint64_t seed, const std::string& out_path,
               std::uint64_t cap) {
  const fractaldim::LoadedSpec loaded = fractaldim::load_spec_file(spec_path);
  const fractaldim::Ifs& ifs = loaded.spec.ifs;

  fractaldim::PointCloud cloud = [&] {
    if (mode == "deterministic") {
      const fractaldim::Vec x0 = fractaldim::fixed_point(ifs.map(1));
      return fractaldim::deterministic_points(ifs, depth, x0, cap);
    }
    if (mode == "chaos") return fractaldim::chaos_game(ifs, count, seed);
    throw fractaldim::invalid_input("unknown mode '" + mode +
                                    "' (expected deterministic or chaos)");
  }();

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) throw fractaldim::invalid_input("cannot write " + out_path);
    os = &file;
  }
  const int d = cloud.dim();
  for (int c = 0; c < d; ++c) {
    if (c) *os << ",";
    if (d <= 3)
      *os << "xyz"[c];
    else
      *os << "x" << (c + 1);
  }
  *os << "\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (int c = 0; c < d; ++c) {
      if (c) *os << ",";
      *os << g17(p[c]);
    }
    *os << "\n";
  }
  return kExitOk;
}

int cmd_levels(const std::string& spec_path, int n, const std::string& out_path,
               std::uint64_t cap) {
  const fractaldim::LoadedSpec loaded = fractaldim::load_spec_file(spec_path);
  const fractaldim::Ifs& ifs = loaded.spec.ifs;
  fractaldim::detail::require_enum_budget(ifs.k(), n, cap, "level enumeration");

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) throw fractaldim::invalid_input("cannot write " + out_path);
    os = &file;
  }
  *os << "word,relative_diameter\n";
  fractaldim::for_each_level_element(
      ifs, n,
      [&](const fractaldim::Word& w, double log_diam) {
        *os << fractaldim::word_to_string(w, ifs.k()) << ","
            << g17(std::exp(log_diam)) << "\n";
      },
      cap);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractal dimensions of IFS attractors"};
  app.require_subcommand(1);

  std::string spec_path;
  double tol = fractaldim::kDefaultMoranTol;
  fractaldim::ReportOptions opts;
  std::string out_path;
  std::string mode = "deterministic";
  int depth = 8;
  std::uint64_t count = 100000;
  std::uint64_t seed = 1;
  int level_n = 1;

  CLI::App* moran = app.add_subcommand("moran", "solve the Moran equation");
  moran->add_option("spec", spec_path, "IFS spec file (JSON)")->required();
  moran->add_option("--tol", tol, "bisection bracket tolerance");

  CLI::App* dims = app.add_subcommand("dims", "full dimension report");
  dims->add_option("spec", spec_path, "IFS spec file (JSON)")->required();
  dims->add_option("--depth", opts.depth, "enumeration depth (default: auto)");
  dims->add_option("--budget", opts.budget, "antichain split budget");
  dims->add_option("--seed", opts.seed, "chaos game seed");
  dims->add_option("--points", opts.points, "chaos game point count");
  dims->add_option("--tol", opts.tol, "Moran solver tolerance");
  dims->add_option("--out", out_path, "report JSON path")
      ->default_str("report.json");

  CLI::App* osc = app.add_subcommand("osc", "verify the OSC certificate");
  osc->add_option("spec", spec_path, "IFS spec file (JSON)")->required();

  CLI::App* points = app.add_subcommand("points", "generate attractor points");
  points->add_option("spec", spec_path, "IFS spec file (JSON)")->required();
  points->add_option("--mode", mode, "deterministic or chaos");
  points->add_option("--depth", depth, "word depth (deterministic mode)");
  points->add_option("--count", count, "point count (chaos mode)");
  points->add_option("--seed", seed, "rng seed (chaos mode)");
  points->add_option("--out", out_path, "output CSV (default: stdout)");

  CLI::App* levels = app.add_subcommand("levels", "list level elements");
  levels->add_option("spec", spec_path, "IFS spec file (JSON)")->required();
  levels->add_option("--n", level_n, "level index");
  levels->add_option("--out", out_path, "output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    const std::uint64_t cap = enum_cap_from_env();
    opts.cap = cap;
    if (moran->parsed()) return cmd_moran(spec_path, tol);
    if (dims->parsed()) {
      if (out_path.empty()) out_path = "report.json";
      return cmd_dims(spec_path, opts, out_path);
    }
    if (osc->parsed()) return cmd_osc(spec_path);
    if (points->parsed())
      return cmd_points(spec_path, mode, depth, count, seed, out_path, cap);
    if (levels->parsed()) return cmd_levels(spec_path, level_n, out_path, cap);
  } catch (const fractaldim::cap_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
