#include "kinkchain/serialize.hpp"

#include <cmath>
#include <limits>

#include "kinkchain/errors.hpp"

namespace kinkchain {

namespace {

Json number(double v) { return std::isnan(v) ? Json(nullptr) : Json(v); }

double read_number(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

Json coefficient_table(const std::map<SiteSet, double>& table) {
  Json arr = Json::array();
  for (const auto& [x, v] : table) arr.push_back({{"sites", to_json(x)}, {"value", v}});
  return arr;
}

std::map<SiteSet, double> read_table(const Json& arr, int n) {
  std::map<SiteSet, double> out;
  for (const auto& row : arr) out.emplace(site_set_from_json(row.at("sites"), n), row.at("value").get<double>());
  return out;
}

void require(std::vector<std::string>& problems, const Json& obj, const std::string& where, const std::string& key,
             bool (Json::*check)() const noexcept) {
  if (!obj.contains(key)) {
    problems.push_back(where + "." + key + " missing");
  } else if (!(obj.at(key).*check)()) {
    problems.push_back(where + "." + key + " has the wrong type");
  }
}

void check_table(std::vector<std::string>& problems, const Json& arr, const std::string& where, int n) {
  if (!arr.is_array()) return;
  for (const auto& row : arr) {
    if (!row.is_object() || !row.contains("sites") || !row.contains("value") || !row.at("sites").is_array() ||
        !row.at("value").is_number()) {
      problems.push_back(where + " row malformed");
      return;
    }
    int prev = 0;
    for (const auto& s : row.at("sites")) {
      if (!s.is_number_integer() || s.get<int>() <= prev || s.get<int>() > n) {
        problems.push_back(where + " site list not sorted within 1..N");
        return;
      }
      prev = s.get<int>();
    }
  }
}

}  // namespace

Json to_json(const SiteSet& x) { return Json(x.sites()); }

SiteSet site_set_from_json(const Json& j, int n_sites) { return SiteSet::of(n_sites, j.get<std::vector<int>>()); }

Json to_json(const TruncationPolicy& p) {
  return {{"w_max", p.w_max},   {"n_max", p.series_order()}, {"alpha_max", p.alpha_max},
          {"tol", p.tol},       {"max_iter", p.max_iter},    {"norm_m", p.norm_m},
          {"jacobi", p.jacobi}};
}

TruncationPolicy policy_from_json(const Json& j) {
  TruncationPolicy p;
  p.w_max = j.at("w_max").get<int>();
  p.n_max = j.at("n_max").get<int>();
  p.alpha_max = j.at("alpha_max").get<int>();
  p.tol = j.at("tol").get<double>();
  p.max_iter = j.at("max_iter").get<int>();
  p.norm_m = j.at("norm_m").get<double>();
  p.jacobi = j.at("jacobi").get<bool>();
  return p;
}

Json to_json(const GroundSolution& sol) {
  return {{"model", to_string(sol.model)},
          {"n_sites", sol.n_sites},
          {"epsilon", sol.epsilon},
          {"w_max", sol.w_max},
          {"n_max", sol.n_max},
          {"g", coefficient_table(sol.g)},
          {"E_plus", sol.e_plus},
          {"E_minus", sol.e_minus},
          {"norm", sol.norm_g},
          {"iterations", sol.iterations},
          {"converged", sol.converged},
          {"deltas", sol.deltas}};
}

GroundSolution ground_from_json(const Json& j) {
  GroundSolution sol;
  sol.model = model_from_string(j.at("model").get<std::string>());
  sol.n_sites = j.at("n_sites").get<int>();
  sol.epsilon = j.at("epsilon").get<double>();
  sol.w_max = j.at("w_max").get<int>();
  sol.n_max = j.at("n_max").get<int>();
  sol.g = read_table(j.at("g"), sol.n_sites);
  sol.e_plus = j.at("E_plus").get<double>();
  sol.e_minus = j.at("E_minus").get<double>();
  sol.norm_g = j.at("norm").get<double>();
  sol.iterations = j.at("iterations").get<int>();
  sol.converged = j.at("converged").get<bool>();
  sol.deltas = j.at("deltas").get<std::vector<double>>();
  return sol;
}

Json to_json(const SeamExpansion& seam) {
  return {{"n_sites", seam.n_sites}, {"w_max", seam.w_max}, {"h", coefficient_table(seam.h)}};
}

SeamExpansion seam_from_json(const Json& j) {
  SeamExpansion seam;
  seam.n_sites = j.at("n_sites").get<int>();
  seam.w_max = j.at("w_max").get<int>();
  if (seam.n_sites > 0) seam.h = read_table(j.at("h"), seam.n_sites);
  return seam;
}

Json to_json(const InterfaceSolution& sol) {
  Json es = Json::array();
  for (int s = 1; s <= 2 * sol.n_sites; ++s) es.push_back(sol.fourier(s));
  return {{"variant", to_string(sol.variant)},
          {"n_sites", sol.n_sites},
          {"epsilon", sol.epsilon},
          {"cutoff", sol.cutoff},
          {"e_map", coefficient_table(sol.e_map)},
          {"e_s", es},
          {"seam", to_json(sol.seam)},
          {"norm", sol.norm_e},
          {"iterations", sol.iterations},
          {"converged", sol.converged},
          {"deltas", sol.deltas}};
}

InterfaceSolution interface_from_json(const Json& j) {
  InterfaceSolution sol;
  sol.variant = model_from_string(j.at("variant").get<std::string>());
  sol.n_sites = j.at("n_sites").get<int>();
  sol.epsilon = j.at("epsilon").get<double>();
  sol.cutoff = j.at("cutoff").get<int>();
  sol.e_map = read_table(j.at("e_map"), sol.n_sites);
  const auto es = j.at("e_s").get<std::vector<double>>();
  if (static_cast<int>(es.size()) != 2 * sol.n_sites) throw SizeMismatchError("e_s must hold 2N entries");
  sol.e_s.assign(es.size(), 0.0);
  for (std::size_t i = 0; i < es.size(); ++i) sol.e_s[(i + 1) % es.size()] = es[i];
  sol.seam = seam_from_json(j.at("seam"));
  sol.norm_e = j.at("norm").get<double>();
  sol.iterations = j.at("iterations").get<int>();
  sol.converged = j.at("converged").get<bool>();
  sol.deltas = j.at("deltas").get<std::vector<double>>();
  return sol;
}

Json to_json(const DispersionSeries& series) {
  Json k = Json::array(), d = Json::array(), coeffs = Json::array();
  for (const auto& smp : series.samples) {
    k.push_back(smp.k);
    d.push_back(number(smp.value));
  }
  for (int s = series.min_s(); s <= series.max_s(); ++s) coeffs.push_back({{"s", s}, {"value", series.coeff(s)}});
  return {{"source", to_string(series.source)},
          {"n_sites", series.n_sites},
          {"k", k},
          {"D", d},
          {"coeffs", coeffs},
          {"E_plus", number(series.e_plus)},
          {"E_minus", number(series.e_minus)},
          {"max_imag_residue", series.max_imag_residue},
          {"symmetry_warning", series.symmetry_warning},
          {"missing", series.missing}};
}

DispersionSeries dispersion_from_json(const Json& j) {
  DispersionSeries series;
  series.source = series_source_from_string(j.at("source").get<std::string>());
  series.n_sites = j.at("n_sites").get<int>();
  series.coeffs.assign(static_cast<std::size_t>(2 * series.n_sites), 0.0);
  for (const auto& row : j.at("coeffs")) {
    const int s = row.at("s").get<int>();
    series.coeffs[static_cast<std::size_t>(s + series.n_sites - 1)] = row.at("value").get<double>();
  }
  const auto& ks = j.at("k");
  const auto& ds = j.at("D");
  for (std::size_t i = 0; i < ks.size(); ++i)
    series.samples.push_back({static_cast<int>(i), ks[i].get<double>(), read_number(ds[i])});
  series.e_plus = read_number(j.at("E_plus"));
  series.e_minus = read_number(j.at("E_minus"));
  series.max_imag_residue = j.at("max_imag_residue").get<double>();
  series.symmetry_warning = j.at("symmetry_warning").get<bool>();
  series.missing = j.at("missing").get<std::vector<int>>();
  return series;
}

Json to_json(const SectorSpectrum& sec) {
  return {{"k_index", sec.k_index},
          {"parity", sec.parity},
          {"lowest_energy", number(sec.lowest_energy)},
          {"second_energy", number(sec.second_energy)},
          {"sector_dimension", sec.sector_dimension}};
}

std::vector<std::string> validate_result_document(const Json& doc) {
  std::vector<std::string> problems;
  if (!doc.is_object()) return {"document is not an object"};
  require(problems, doc, "doc", "meta", &Json::is_object);
  if (!problems.empty()) return problems;
  const auto& meta = doc.at("meta");
  require(problems, meta, "meta", "model", &Json::is_string);
  require(problems, meta, "meta", "n_sites", &Json::is_number_integer);
  require(problems, meta, "meta", "epsilon", &Json::is_number);
  require(problems, meta, "meta", "policy", &Json::is_object);
  require(problems, meta, "meta", "pipelines", &Json::is_array);
  require(problems, meta, "meta", "status", &Json::is_string);
  const int n = meta.value("n_sites", 0);

  if (doc.contains("ground")) {
    const auto& g = doc.at("ground");
    for (const char* key : {"E_plus", "E_minus", "norm"}) require(problems, g, "ground", key, &Json::is_number);
    require(problems, g, "ground", "iterations", &Json::is_number_integer);
    require(problems, g, "ground", "g", &Json::is_array);
    if (g.contains("g")) check_table(problems, g.at("g"), "ground.g", n);
  }
  if (doc.contains("interface")) {
    const auto& i = doc.at("interface");
    require(problems, i, "interface", "e_map", &Json::is_array);
    require(problems, i, "interface", "e_s", &Json::is_array);
    require(problems, i, "interface", "norm", &Json::is_number);
    if (i.contains("e_map")) check_table(problems, i.at("e_map"), "interface.e_map", n);
    if (i.contains("e_s") && i.at("e_s").is_array() && static_cast<int>(i.at("e_s").size()) != 2 * n)
      problems.push_back("interface.e_s must hold 2N entries");
  }
  for (const char* section : {"dispersion", "ed_dispersion"}) {
    if (!doc.contains(section)) continue;
    const auto& d = doc.at(section);
    require(problems, d, section, "k", &Json::is_array);
    require(problems, d, section, "D", &Json::is_array);
    require(problems, d, section, "coeffs", &Json::is_array);
    if (d.contains("k") && d.contains("D") && d.at("k").size() != d.at("D").size())
      problems.push_back(std::string(section) + ".k and D differ in length");
  }
  if (doc.contains("ed")) {
    const auto& e = doc.at("ed");
    require(problems, e, "ed", "E_plus", &Json::is_number);
    require(problems, e, "ed", "E_minus", &Json::is_number);
  }
  if (doc.contains("crossval")) require(problems, doc, "doc", "crossval", &Json::is_object);
  return problems;
}

}  // namespace kinkchain
