#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

#include "fractaldim/report.hpp"
#include "fractaldim/version.hpp"

namespace fractaldim {

namespace detail {

inline std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline nlohmann::json sequence_to_json(const DimSequenceValue& d) {
  nlohmann::json seq = nlohmann::json::array();
  for (const SequenceTerm& t : d.sequence)
    seq.push_back({{"n", t.n}, {"lo", t.value.lo}, {"hi", t.value.hi}});
  return {{"value", d.value}, {"sequence", seq}};
}

inline nlohmann::json fit_to_json(const BoxFit& f) {
  return {{"slope", f.slope},
          {"intercept", f.intercept},
          {"stderr_slope", f.stderr_slope},
          {"residuals", f.residuals},
          {"degenerate", f.degenerate}};
}

}  // namespace detail

inline nlohmann::json report_to_json(const DimensionReport& r,
                                     const std::string& spec_hash) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["spec_hash"] = spec_hash;
  j["ifs"] = {{"k", r.k}, {"dim", r.dim}, {"ratios", r.ratios}, {"c_max", r.c_max}};
  j["equal_ratio"] = r.equal_ratio;
  j["diam"] = {{"lo", r.diam.lo},
               {"hi", r.diam.hi},
               {"depth", r.diam_depth},
               {"epsilon", r.diam_epsilon},
               {"overridden", r.diam_overridden}};
  j["dim1"] = detail::sequence_to_json(r.dim1);
  j["dim2"] = detail::sequence_to_json(r.dim2);
  {
    nlohmann::json d3;
    d3["s"] = r.dim3.moran.s;
    d3["residual"] = r.dim3.moran.residual;
    d3["iterations"] = r.dim3.moran.iterations;
    d3["method"] = to_string(r.dim3.moran.method);
    d3["jump_verified"] = r.dim3.jump_verified;
    if (r.dim3.below_class) d3["below_class"] = to_string(*r.dim3.below_class);
    if (r.dim3.above_class) d3["above_class"] = to_string(*r.dim3.above_class);
    j["dim3"] = d3;
  }
  j["dims456"] = {{"dim4_upper", r.dims456.dim4_upper},
                  {"dim5_upper", r.dims456.dim5_upper},
                  {"dim6_upper", r.dims456.dim6_upper},
                  {"grid_step", r.dims456.grid_step},
                  {"level", r.dims456.level_n},
                  {"budget", r.dims456.budget},
                  {"evaluations", r.dims456.evaluations}};
  {
    nlohmann::json h3;
    h3["class"] = to_string(r.h3.cls);
    h3["value_lo"] = r.h3.value.lo;
    h3["value_hi"] = r.h3.value.hi;
    h3["sum_ratio"] = r.h3.sum_ratio;
    h3["level"] = r.h3_level;
    h3["s"] = r.s_star;
    h3["agreement_rel"] = r.h3_agreement_rel;
    h3["direct"] = {{"value_lo", r.h3_direct.value.lo},
                    {"value_hi", r.h3_direct.value.hi},
                    {"argmin_level", r.h3_direct.argmin_level},
                    {"level_sums", r.h3_direct.level_sums_rel}};
    j["h3"] = h3;
  }
  {
    nlohmann::json box;
    box["points"] = r.box_points;
    box["seed"] = r.box_seed;
    box["scales"] = r.box.counts.scales;
    box["grid_counts"] = r.box.counts.grid;
    box["packing_counts"] = r.box.counts.packing;
    box["grid_fit"] = detail::fit_to_json(r.box.grid);
    box["packing_fit"] = detail::fit_to_json(r.box.packing);
    box["notes"] = r.box_notes;
    j["box"] = box;
  }
  {
    nlohmann::json osc;
    osc["status"] = r.osc_status;
    if (r.osc) {
      osc["min_containment_margin"] = r.osc->min_containment_margin;
      if (r.osc->min_separation) osc["min_separation"] = *r.osc->min_separation;
      nlohmann::json vs = nlohmann::json::array();
      for (const Violation& v : r.osc->violations) {
        nlohmann::json vj;
        vj["kind"] =
            v.kind == Violation::Kind::containment ? "containment" : "overlap";
        vj["i"] = v.i;
        if (v.kind == Violation::Kind::overlap) vj["j"] = v.j;
        if (v.witness) vj["witness"] = {v.witness->x, v.witness->y};
        vj["detail"] = v.detail;
        vs.push_back(vj);
      }
      osc["violations"] = vs;
    }
    j["osc"] = osc;
  }
  {
    nlohmann::json cc = nlohmann::json::array();
    for (const Crosscheck& c : r.crosschecks)
      cc.push_back({{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
    j["crosschecks"] = cc;
  }
  {
    nlohmann::json prov;
    for (const auto& [field, note] : r.provenance) prov[field] = note;
    j["provenance"] = prov;
  }
  {
    nlohmann::json t;
    for (const auto& [stage, ms] : r.timings_ms) t[stage] = ms;
    j["timings"] = t;
  }
  return j;
}

// Writes the JSON report plus the CSV side files next to it:
// <stem>.dim1_sequence.csv, <stem>.dim2_sequence.csv (columns n,value) and
// <stem>.box_counts.csv. Returns the list of written paths.
inline std::vector<std::string> write_report_files(const DimensionReport& r,
                                                   const std::string& spec_hash,
                                                   const std::string& json_path) {
  std::vector<std::string> written;
  {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw invalid_input("report: cannot write " + json_path);
    out << report_to_json(r, spec_hash).dump(2) << "\n";
    written.push_back(json_path);
  }
  std::string stem = json_path;
  if (stem.size() >= 5 && stem.substr(stem.size() - 5) == ".json")
    stem = stem.substr(0, stem.size() - 5);

  const auto write_sequence = [&](const std::string& path,
                                  const DimSequenceValue& d) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("report: cannot write " + path);
    out << "n,value\n";
    for (const SequenceTerm& t : d.sequence)
      out << t.n << "," << detail::csv_double(t.value.mid()) << "\n";
    written.push_back(path);
  };
  write_sequence(stem + ".dim1_sequence.csv", r.dim1);
  write_sequence(stem + ".dim2_sequence.csv", r.dim2);

  {
    const std::string path = stem + ".box_counts.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("report: cannot write " + path);
    out << "delta,grid_count,packing_count,log_delta,log_count\n";
    for (std::size_t i = 0; i < r.box.counts.scales.size(); ++i) {
      const double delta = r.box.counts.scales[i];
      const std::uint64_t g = r.box.counts.grid[i];
      out << detail::csv_double(delta) << "," << g << ","
          << r.box.counts.packing[i] << "," << detail::csv_double(std::log(delta))
          << "," << detail::csv_double(std::log(static_cast<double>(g))) << "\n";
    }
    written.push_back(path);
  }
  return written;
}

}  // namespace fractaldim
