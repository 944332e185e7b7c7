#include "aniso/report.hpp"

#include <cstdio>
#include <sstream>

namespace aniso {

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const LinearFit& r) {
  return Json{{"slope", r.slope}, {"intercept", r.intercept}, {"r_squared", r.r_squared}};
}

Json to_json(const CancellationReport& r) {
  Json residuals = Json::array();
  for (const auto& c : r.residuals) residuals.push_back(complex_json(c));
  return Json{{"v_dim", r.v_dim},
              {"is_canceling", r.is_canceling},
              {"weakly_canceling", r.weakly_canceling},
              {"residuals", residuals},
              {"spectral_gap", r.spectral_gap},
              {"ill_conditioned", r.ill_conditioned},
              {"refinement_stable", r.refinement_stable}};
}

Json to_json(const MikhlinReport& r) {
  return Json{{"residual", complex_json(r.residual)},
              {"scale", r.scale},
              {"passes", r.passes}};
}

Json to_json(const DiniReport& r) {
  return Json{{"scales", r.scales}, {"modulus", r.modulus}, {"dini_sum", r.dini_sum}};
}

Json to_json(const KernelFtReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"eps", row.eps},
                        {"R", row.R},
                        {"sup", row.sup},
                        {"khat0", complex_json(row.khat0)},
                        {"resolved", row.resolved}});
  return Json{{"rows", rows},
              {"mikhlin", to_json(r.mikhlin)},
              {"plateau_variation", r.plateau_variation},
              {"log_fit", to_json(r.log_fit)}};
}

Json to_json(const EmbeddingReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"eps", row.eps},
                        {"R", row.R},
                        {"resolved", row.resolved},
                        {"ratios", row.ratios},
                        {"max_ratio", row.max_ratio}});
  return Json{{"rows", rows},
              {"plateau_variation", r.plateau_variation},
              {"fit_vs_log", to_json(r.fit_vs_log)},
              {"fit_vs_sqrtlog", to_json(r.fit_vs_sqrtlog)}};
}

Json to_json(const std::vector<NearDeltaRow>& rows) {
  Json out = Json::array();
  for (const auto& row : rows)
    out.push_back(Json{{"eps", row.eps},
                       {"R", row.R},
                       {"measured", complex_json(row.measured)},
                       {"oracle", complex_json(row.oracle)},
                       {"rel_error", row.rel_error}});
  return out;
}

Json to_json(const BilinearizationReport& r) {
  return Json{{"pairs", r.pairs},
              {"max_violation", r.max_violation},
              {"max_lhs", r.max_lhs}};
}

Json to_json(const HolderEstimate& r) {
  Json out{{"exact", r.exact}, {"pairs_used", r.pairs_used}};
  if (!r.exact) {
    out["alpha"] = r.alpha;
    out["log_constant"] = r.log_constant;
  }
  return out;
}

Json Report::to_json() const {
  return Json{{"schema_version", schema_version}, {"command", command},
              {"status", status},                 {"seed", seed},
              {"params", params},                 {"results", results},
              {"flags", flags}};
}

namespace {

std::string round6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void render(const Json& j, const std::string& key, int indent, std::ostringstream& out) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    if (!key.empty()) out << pad << key << ":\n";
    for (auto it = j.begin(); it != j.end(); ++it)
      render(it.value(), it.key(), indent + (key.empty() ? 0 : 2), out);
  } else if (j.is_array()) {
    out << pad << key << ":";
    bool scalars = true;
    for (const auto& e : j)
      if (e.is_object() || e.is_array()) scalars = false;
    if (scalars) {
      for (const auto& e : j)
        out << ' ' << (e.is_number_float() ? round6(e.get<double>()) : e.dump());
      out << '\n';
    } else {
      out << '\n';
      int i = 0;
      for (const auto& e : j) render(e, "[" + std::to_string(i++) + "]", indent + 2, out);
    }
  } else if (j.is_number_float()) {
    out << pad << key << ": " << round6(j.get<double>()) << '\n';
  } else {
    out << pad << key << ": " << j.dump() << '\n';
  }
}

}  // namespace

std::string Report::to_text() const {
  std::ostringstream out;
  out << "command: " << command << '\n';
  out << "status: " << status << '\n';
  out << "seed: " << seed << '\n';
  render(params, "params", 0, out);
  render(results, "results", 0, out);
  if (!flags.empty()) {
    out << "flags:";
    for (const auto& f : flags) out << ' ' << f;
    out << '\n';
  }
  return out.str();
}

}  // namespace aniso
