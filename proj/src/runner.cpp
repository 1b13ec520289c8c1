#include "kinkchain/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <optional>

#include "kinkchain/errors.hpp"

namespace kinkchain {

namespace {

constexpr int kMaxEdDispersionSites = 13;
constexpr int kMaxEdParitySites = 16;
constexpr int kMaxResidualSites = 13;

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string format_epsilon(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", eps);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw Error("write to " + path.string() + " failed");
}

std::string dispersion_csv(const Json& doc) {
  std::string out = "j,k,D_kt,D_ed\n";
  const Json* kt = doc.contains("dispersion") ? &doc.at("dispersion") : nullptr;
  const Json* ed = doc.contains("ed_dispersion") ? &doc.at("ed_dispersion") : nullptr;
  const Json* grid = kt ? kt : ed;
  if (!grid) return out;
  const auto& ks = grid->at("k");
  for (std::size_t j = 0; j < ks.size(); ++j) {
    auto cell = [&](const Json* d) -> std::string {
      if (!d || d->at("D")[j].is_null()) return "";
      return d->at("D")[j].dump();
    };
    out += std::to_string(j) + "," + ks[j].dump() + "," + cell(kt) + "," + cell(ed) + "\n";
  }
  return out;
}

Json crossval_report(const DispersionSeries& kt, const DispersionSeries& ed) {
  double worst = 0.0;
  for (int s = kt.min_s(); s <= kt.max_s(); ++s) worst = std::max(worst, std::abs(kt.coeff(s) - ed.coeff(s)));
  return {{"e2_kt", kt.coeff(2)},
          {"e2_ed", ed.coeff(2)},
          {"e2_abs_diff", std::abs(kt.coeff(2) - ed.coeff(2))},
          {"max_coeff_abs_diff", worst},
          {"E_plus_abs_diff", finite_or_null(std::abs(kt.e_plus - ed.e_plus))},
          {"E_minus_abs_diff", finite_or_null(std::abs(kt.e_minus - ed.e_minus))}};
}

Json extrapolation_report(double eps, std::vector<DispersionSeries> series, const std::string& source) {
  Json rep = {{"epsilon", eps}, {"source", source}};
  Json flat = Json::array();
  for (const auto& s : series)
    flat.push_back({{"n_sites", s.n_sites}, {"off_center_mass", s.off_center_mass()}, {"band_width", s.band_width()}});
  rep["flatness"] = flat;
  const auto ex = extrapolate(std::move(series));
  Json trends = Json::array();
  for (const auto& t : ex.trends)
    trends.push_back({{"s", t.s},
                      {"n_values", t.n_values},
                      {"values", t.values},
                      {"estimate", t.estimate},
                      {"decay_rate", finite_or_null(t.decay_rate)},
                      {"cauchy", t.cauchy}});
  rep["trends"] = trends;
  rep["all_cauchy"] = ex.all_cauchy;
  return rep;
}

}  // namespace

std::string to_string(Pipeline p) {
  switch (p) {
    case Pipeline::Ground: return "ground";
    case Pipeline::Interface: return "interface";
    case Pipeline::Ed: return "ed";
    case Pipeline::Crossval: return "crossval";
    case Pipeline::Extrapolate: return "extrapolate";
  }
  return "unknown";
}

Pipeline pipeline_from_string(const std::string& name) {
  for (auto p : {Pipeline::Ground, Pipeline::Interface, Pipeline::Ed, Pipeline::Crossval, Pipeline::Extrapolate})
    if (to_string(p) == name) return p;
  throw ConfigError("pipeline: unknown value '" + name + "'");
}

std::set<Pipeline> ExperimentConfig::resolved_pipelines() const {
  auto out = pipelines;
  if (out.contains(Pipeline::Crossval)) {
    out.insert(Pipeline::Interface);
    out.insert(Pipeline::Ed);
  }
  if (out.contains(Pipeline::Extrapolate) && !out.contains(Pipeline::Interface)) out.insert(Pipeline::Ed);
  if (out.contains(Pipeline::Interface) && model != Model::XxzFerro) out.insert(Pipeline::Ground);
  return out;
}

void ExperimentConfig::validate() const {
  try {
    policy.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("policy: ") + e.what());
  }
  if (n_values.empty()) throw ConfigError("n: at least one chain length is required");
  if (epsilons.empty()) throw ConfigError("epsilon: at least one value is required");
  if (pipelines.empty()) throw ConfigError("pipeline: at least one pipeline is required");
  if (format != "json" && format != "csv") throw ConfigError("format: expected json or csv");
  if (workers < 1) throw ConfigError("workers: must be >= 1");
  const auto pipes = resolved_pipelines();
  if (model == Model::XxzFerro && pipelines.contains(Pipeline::Ground))
    throw ConfigError("pipeline: ground covers the antiferromagnetic models only");
  const bool kink = pipes.contains(Pipeline::Interface) || pipes.contains(Pipeline::Crossval) ||
                    pipes.contains(Pipeline::Extrapolate);
  std::set<int> odd;
  for (int n : n_values) {
    if (n < 3 || n > 20) throw ConfigError("n: " + std::to_string(n) + " outside 3..20");
    if (kink && n % 2 == 0) throw ConfigError("n: interface pipelines need odd N, got " + std::to_string(n));
    if (kink && n > 19) throw ConfigError("n: interface pipelines support N <= 19");
    if (pipes.contains(Pipeline::Ed) && n > kMaxEdParitySites)
      throw ConfigError("n: exact diagonalization supports N <= 16, got " + std::to_string(n));
    if ((pipes.contains(Pipeline::Crossval) || (pipes.contains(Pipeline::Ed) && n % 2 == 1)) &&
        n > kMaxEdDispersionSites)
      throw ConfigError("n: oracle dispersion supports odd N <= 13, got " + std::to_string(n));
    if (n % 2 == 1) odd.insert(n);
  }
  if (pipes.contains(Pipeline::Extrapolate) && odd.size() < 3)
    throw ConfigError("n: extrapolation needs at least three distinct odd N");
  std::set<std::string> names;
  for (double eps : epsilons) {
    if (!std::isfinite(eps)) throw ConfigError("epsilon: must be finite");
    if (std::abs(eps) * policy.norm_m > 1.0)
      throw ConfigError("epsilon: |" + format_epsilon(eps) + "| * M exceeds 1");
    if (!names.insert(format_epsilon(eps)).second)
      throw ConfigError("epsilon: duplicate value " + format_epsilon(eps));
  }
}

std::string cell_name(Model model, int n_sites, double epsilon) {
  return to_string(model) + "_N" + std::to_string(n_sites) + "_eps" + format_epsilon(epsilon);
}

Json run_cell(const ExperimentConfig& config, int n, double eps) {
  const auto pipes = config.resolved_pipelines();
  Json pipe_names = Json::array();
  for (auto p : pipes) pipe_names.push_back(to_string(p));
  Json doc;
  doc["meta"] = {{"model", to_string(config.model)},
                 {"n_sites", n},
                 {"epsilon", eps},
                 {"policy", to_json(config.policy)},
                 {"pipelines", pipe_names},
                 {"status", "ok"}};
  const bool af = config.model != Model::XxzFerro;
  try {
    const auto uniform = ModelSpec::uniform(config.model, n, eps);
    const auto seamed = ModelSpec::seamed(config.model, n, eps);
    GroundSolution ground;
    std::optional<DispersionSeries> kt, ed;

    if (pipes.contains(Pipeline::Ground) && af) {
      ground = solve_ground(uniform, config.policy);
      doc["ground"] = to_json(ground);
      if (n <= kMaxResidualSites) {
        const auto r = residual_ground(ground, uniform);
        doc["ground"]["residual"] = {{"max_dev_even", r.max_dev_even}, {"max_dev_odd", r.max_dev_odd}};
      }
    }
    if (pipes.contains(Pipeline::Interface)) {
      const auto seam = af ? compute_h(ground, config.policy) : SeamExpansion{};
      const auto sol = solve_interface(config.model, ground, seam, seamed, config.policy);
      doc["interface"] = to_json(sol);
      if (n <= kMaxResidualSites) doc["interface"]["residual"] = residual_interface(sol, ground, seamed);
      const double ep = af ? ground.e_plus : -n;
      const double em = af ? ground.e_minus : -n;
      kt = from_interface(sol, ep, em);
      doc["dispersion"] = to_json(*kt);
    }
    if (pipes.contains(Pipeline::Ed)) {
      const auto h = build_hamiltonian(uniform, interface_frame(config.model));
      const auto sym = build_symmetries(uniform);
      const auto [ep, em] = parity_energies(h, sym.p);
      doc["ed"] = {{"E_plus", ep}, {"E_minus", em}};
      if (n % 2 == 1) {
        ed = oracle_dispersion(seamed);
        doc["ed_dispersion"] = to_json(*ed);
      }
    }
    if (pipes.contains(Pipeline::Crossval) && kt && ed) doc["crossval"] = crossval_report(*kt, *ed);
  } catch (const DivergenceError& e) {
    doc["meta"]["status"] = "diverged";
    doc["meta"]["error"] = e.what();
    doc["meta"]["last_delta"] = finite_or_null(e.last_delta());
  } catch (const InvariantViolationError& e) {
    doc["meta"]["status"] = "invariant_violation";
    doc["meta"]["error"] = e.what();
  } catch (const SymmetryViolationError& e) {
    doc["meta"]["status"] = "invariant_violation";
    doc["meta"]["error"] = e.what();
  } catch (const Error& e) {
    doc["meta"]["status"] = "failed";
    doc["meta"]["error"] = e.what();
  }
  return doc;
}

RunResult run(const ExperimentConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out);

  std::vector<int> ns = config.n_values;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::vector<std::pair<int, double>> cells;
  for (double eps : config.epsilons)
    for (int n : ns) cells.emplace_back(n, eps);

  std::vector<Json> docs(cells.size());
  for (std::size_t start = 0; start < cells.size(); start += static_cast<std::size_t>(config.workers)) {
    const std::size_t stop = std::min(cells.size(), start + static_cast<std::size_t>(config.workers));
    std::vector<std::future<Json>> jobs;
    for (std::size_t i = start; i < stop; ++i)
      jobs.push_back(std::async(std::launch::async, run_cell, std::cref(config), cells[i].first, cells[i].second));
    for (std::size_t i = start; i < stop; ++i) docs[i] = jobs[i - start].get();
  }

  RunResult result;
  Json rows = Json::array();
  bool partial = false, violated = false;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& [n, eps] = cells[i];
    const auto& doc = docs[i];
    const std::string name = cell_name(config.model, n, eps);
    const auto path = config.out / (name + ".json");
    write_text(path, doc.dump(2) + "\n");
    result.files.push_back(path);
    if (config.format == "csv" && (doc.contains("dispersion") || doc.contains("ed_dispersion"))) {
      const auto csv = config.out / (name + "_dispersion.csv");
      write_text(csv, dispersion_csv(doc));
      result.files.push_back(csv);
    }
    const std::string status = doc.at("meta").at("status").get<std::string>();
    violated = violated || status == "invariant_violation";
    partial = partial || status != "ok";

    Json row = {{"file", path.filename().string()}, {"n_sites", n}, {"epsilon", eps}, {"status", status}};
    if (doc.contains("ground")) {
      row["E_plus_kt"] = doc["ground"]["E_plus"];
      row["E_minus_kt"] = doc["ground"]["E_minus"];
    }
    if (doc.contains("ed")) {
      row["E_plus_ed"] = doc["ed"]["E_plus"];
      row["E_minus_ed"] = doc["ed"]["E_minus"];
    }
    if (doc.contains("interface")) row["e2_kt"] = doc["interface"]["e_s"][1];
    if (doc.contains("ed_dispersion")) row["e2_ed"] = dispersion_from_json(doc["ed_dispersion"]).coeff(2);
    if (doc.contains("crossval")) row["e2_abs_diff"] = doc["crossval"]["e2_abs_diff"];
    rows.push_back(row);
  }

  result.summary = {{"model", to_string(config.model)}, {"policy", to_json(config.policy)}, {"cells", rows}};
  if (config.resolved_pipelines().contains(Pipeline::Extrapolate)) {
    const bool use_kt = config.resolved_pipelines().contains(Pipeline::Interface);
    const std::string section = use_kt ? "dispersion" : "ed_dispersion";
    Json reports = Json::array();
    for (double eps : config.epsilons) {
      std::vector<DispersionSeries> series;
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].second == eps && docs[i].contains(section))
          series.push_back(dispersion_from_json(docs[i][section]));
      try {
        reports.push_back(extrapolation_report(eps, std::move(series), use_kt ? "kt" : "ed"));
      } catch (const InsufficientDataError& e) {
        reports.push_back({{"epsilon", eps}, {"error", e.what()}});
        partial = true;
      }
    }
    result.summary["extrapolation"] = reports;
  }
  const auto summary_path = config.out / "summary.json";
  write_text(summary_path, result.summary.dump(2) + "\n");
  result.files.push_back(summary_path);
  result.exit_code = violated ? kExitInvariant : (partial ? kExitPartial : kExitOk);
  return result;
}

}  // namespace kinkchain
