// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "kinkchain/ed.hpp"
#include "kinkchain/hopping.hpp"
#include "kinkchain/runner.hpp"
#include "kinkchain/weights.hpp"

using namespace kinkchain;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Report {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      out_.pass = false;
      failures_.push_back(what);
    }
  }
  void note(const std::string& text) { notes_.push_back(text); }
  [[nodiscard]] Outcome finish() {
    std::string d;
    for (const auto& f : failures_) d += (d.empty() ? "" : "; ") + std::string("failed: ") + f;
    for (const auto& n : notes_) d += (d.empty() ? "" : "; ") + n;
    out_.detail = d;
    return out_;
  }

 private:
  Outcome out_;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::pair<double, double> ed_parity(Model m, int n, double eps) {
  const auto spec = ModelSpec::uniform(m, n, eps);
  return parity_energies(build_hamiltonian(spec, Frame::RotatedSublattice), build_symmetries(spec).p);
}

DispersionSeries kt_series(Model m, int n, double eps, const TruncationPolicy& pol) {
  GroundSolution g;
  SeamExpansion h;
  if (m != Model::XxzFerro) {
    g = solve_ground(ModelSpec::uniform(m, n, eps), pol);
    h = compute_h(g, pol);
  }
  const auto sol = solve_interface(m, g, h, ModelSpec::seamed(m, n, eps), pol);
  return from_interface(sol, g.e_plus, g.e_minus);
}

double worst_ground_residual(int n, double eps, int w_max) {
  TruncationPolicy pol;
  pol.w_max = w_max;
  const auto spec = ModelSpec::uniform(Model::XzAf, n, eps);
  const auto r = residual_ground(solve_ground(spec, pol), spec);
  return std::max(r.max_dev_even, r.max_dev_odd);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

// Every field the struct serializes comes back unchanged. The runner adds
// extra keys (such as residual) that the struct does not carry.
bool same_fields(const Json& reserialized, const Json& stored) {
  if (reserialized.empty()) return false;
  for (const auto& [key, value] : reserialized.items())
    if (!stored.contains(key) || stored.at(key) != value) return false;
  return true;
}

Outcome ground_oracle() {
  Report r;
  double worst = 0.0, slowest = 0.0;
  for (auto m : {Model::XzAf, Model::XxzAf})
    for (int n : {6, 8, 10})
      for (double eps : {0.02, 0.05, 0.1}) {
        const auto t0 = std::chrono::steady_clock::now();
        TruncationPolicy pol;
        pol.w_max = n / 2 + 2;
        const auto g = solve_ground(ModelSpec::uniform(m, n, eps), pol);
        const auto [plus, minus] = ed_parity(m, n, eps);
        const double d = std::max(std::abs(g.e_plus - plus), std::abs(g.e_minus - minus));
        slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        worst = std::max(worst, d);
        r.require(d <= 1e-6, to_string(m) + " N=" + std::to_string(n) + fmt(" eps=%g", eps) + fmt(" |dE|=%.2e", d));
      }
  r.require(slowest <= 60.0, fmt("slowest cell %.1f s", slowest));
  r.note(fmt2("max |dE| %.2e, slowest cell %.2f s", worst, slowest));
  return r.finish();
}

Outcome ground_residual() {
  Report r;
  const double r3 = worst_ground_residual(9, 0.05, 3);
  const double r5 = worst_ground_residual(9, 0.05, 5);
  const double r7 = worst_ground_residual(9, 0.05, 7);
  r.require(r7 <= 1e-8, fmt("residual at w_max=7 is %.2e", r7));
  // At N=9 no set weighs more than 5, so w_max = 5 and 7 both sit at round-off.
  r.require(r3 > r5 && r5 >= r7, "residual increases with w_max");
  r.note(fmt2("w_max 3/5: %.2e / %.2e", r3, r5) + fmt(", 7: %.2e", r7));
  return r.finish();
}

Outcome parity_splitting() {
  Report r;
  std::vector<double> gaps;
  for (int n : {4, 6, 8, 10}) {
    const auto [plus, minus] = ed_parity(Model::XzAf, n, 0.1);
    gaps.push_back(std::abs(plus - minus));
  }
  std::vector<double> ratios;
  for (std::size_t i = 1; i < gaps.size(); ++i) ratios.push_back(gaps[i] / gaps[i - 1]);
  double lo = ratios[0], hi = ratios[0];
  std::string list;
  for (double q : ratios) {
    lo = std::min(lo, q);
    hi = std::max(hi, q);
    r.require(q <= 0.1, fmt("ratio %.3f above 0.1", q));
    list += fmt(list.empty() ? "%.4f" : ", %.4f", q);
  }
  r.require(hi <= 3.0 * lo, "ratios spread by more than a factor 3");
  r.note("ratios " + list);
  return r.finish();
}

Outcome af_instability() {
  Report r;
  const int n = 9;
  for (auto m : {Model::XzAf, Model::XxzAf}) {
    const std::string name = to_string(m);
    const auto ed02 = oracle_dispersion(ModelSpec::seamed(m, n, 0.02));
    const double ratio = ed02.coeff(2) / 0.02;
    r.require(std::abs(ratio - 1.0) <= 0.25, name + fmt(" e2/eps at eps=0.02 is %.4f", ratio));

    // least-squares line through (eps, e2/eps)
    const std::vector<double> epss{0.01, 0.02, 0.04};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double e : epss) {
      const double y = oracle_dispersion(ModelSpec::seamed(m, n, e)).coeff(2) / e;
      sx += e;
      sy += y;
      sxx += e * e;
      sxy += e * y;
    }
    const double k = static_cast<double>(epss.size());
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / k;
    r.require(intercept >= 0.95 && intercept <= 1.05, name + fmt(" intercept %.4f", intercept));

    TruncationPolicy pol;
    pol.w_max = 7;
    const auto kt = kt_series(m, n, 0.05, pol);
    const auto ed05 = oracle_dispersion(ModelSpec::seamed(m, n, 0.05));
    const double diff = std::abs(kt.coeff(2) - ed05.coeff(2));
    r.require(diff <= 1e-5, name + fmt(" |e2 kt - e2 ed| = %.2e", diff));
    const double width = ed05.band_width();
    r.require(width >= 3 * 0.05, name + fmt(" band width %.4f", width));
    r.note(name + fmt(": e2/eps(0.02) %.4f", ratio) + fmt(", intercept %.4f", intercept) +
           fmt(", |de2| %.1e", diff) + fmt(", width/eps %.2f", width / 0.05));
  }
  return r.finish();
}

Outcome coefficient_decay() {
  Report r;
  const double eps = 0.05;
  const auto ed = oracle_dispersion(ModelSpec::seamed(Model::XzAf, 11, eps));
  const double e2 = std::abs(ed.coeff(2)), e4 = std::abs(ed.coeff(4)), e6 = std::abs(ed.coeff(6));
  // smallest C satisfying both bounds
  const double c = std::max(e4 / (e2 * eps), std::sqrt(e6 / e2) / eps);
  r.require(c <= 20.0, fmt("fitted C = %.3f", c));
  r.note(fmt2("|e2| %.3e, |e4| %.3e", e2, e4) + fmt(", |e6| %.3e", e6) + fmt(", C %.3f", c));
  return r.finish();
}

Outcome ferro_flatness() {
  Report r;
  const double eps = 0.1;
  std::vector<double> mass;
  DispersionSeries ed9, ed11;
  for (int n : {7, 9, 11}) {
    const auto ed = oracle_dispersion(ModelSpec::seamed(Model::XxzFerro, n, eps));
    mass.push_back(ed.off_center_mass());
    if (n == 9) ed9 = ed;
    if (n == 11) ed11 = ed;
  }
  for (std::size_t i = 1; i < mass.size(); ++i)
    r.require(mass[i] <= 0.1 * mass[i - 1], fmt2("mass ratio %.3e (%.3e)", mass[i] / mass[i - 1], mass[i]));
  r.require(ed11.band_width() <= 1e-6, fmt("N=11 band width %.2e", ed11.band_width()));
  const auto kt = kt_series(Model::XxzFerro, 9, eps, TruncationPolicy{});
  double worst = 0.0;
  for (int s = kt.min_s(); s <= kt.max_s(); ++s) worst = std::max(worst, std::abs(kt.coeff(s) - ed9.coeff(s)));
  r.require(worst <= 1e-7, fmt("N=9 |e_s kt - e_s ed| = %.2e", worst));
  r.note(fmt2("mass N=7/9: %.2e / %.2e", mass[0], mass[1]) + fmt(", N=11: %.2e", mass[2]) +
         fmt(", width N=11 %.1e", ed11.band_width()) + fmt(", kt-ed %.1e", worst));
  return r.finish();
}

Outcome symmetry_identities() {
  Report r;
  double worst = 0.0;
  for (int n : {5, 7, 9}) {
    const auto sym = build_symmetries(ModelSpec::seamed(Model::XzAf, n, 0.05));
    using Sp = Eigen::SparseMatrix<double, Eigen::RowMajor>;
    Sp power = sym.t.matrix;
    Sp tn;
    for (int i = 2; i <= 2 * n; ++i) {
      power = Sp(power * sym.t.matrix);
      if (i == n) tn = power;
    }
    Sp id(power.rows(), power.cols());
    id.setIdentity();
    r.require(Sp(tn - sym.p.matrix).coeffs().cwiseAbs().sum() == 0.0, "T^N != P at N=" + std::to_string(n));
    r.require(Sp(power - id).coeffs().cwiseAbs().sum() == 0.0, "T^2N != I at N=" + std::to_string(n));
    for (auto m : {Model::XzAf, Model::XxzAf, Model::XxzFerro}) {
      const auto spec = ModelSpec::seamed(m, n, 0.07);
      const auto s2 = build_symmetries(spec);
      const auto h = build_hamiltonian(spec, interface_frame(m));
      const double c = std::max(commutator_norm(h, s2.t), commutator_norm(h, s2.p));
      worst = std::max(worst, c);
      r.require(c <= 1e-12, to_string(m) + " commutator " + fmt("%.2e", c));
    }
  }
  r.note(fmt("max commutator %.1e", worst));
  return r.finish();
}

Outcome combinatorics() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  long checks = 0;
  for (int n = 3; n <= 7; ++n) {
    const mask::Bits dim = mask::Bits{1} << n;
    bool nz = true, a = true, b = true, c = true, d = true, parity = true;
    for (mask::Bits z = 0; z < dim; ++z) {
      const mask::Bits sites = mask::interface_sites(z, n);
      nz = nz && mask::popcount(sites) == mask::n_of(z, n) + 1;
      const int wz = mask::weight_wN(z, n);
      for (int s = 0; s < 2 * n; ++s) {
        const int chain = mask::weight_wN(mask::gen_translate_empty(s, n), n);
        b = b && wz <= mask::weight_wN(mask::gen_translate(z, -s, n), n) + chain;
        ++checks;
      }
      for (int j = 1; j <= n; ++j) {
        if (!(sites & mask::site(j))) continue;
        const mask::Bits moved = z ^ mask::pair(j, n);
        d = d && mask::weight_wN(moved, n) <= wz + 1;
        parity = parity && mask::popcount(moved) % 2 == mask::popcount(z) % 2;
        for (mask::Bits y = 0; y < dim; ++y) {
          const mask::Bits x = mask::rotl(y, j, n) ^ z;
          const int wy = mask::weight_wN(y, n);
          a = a && mask::weight_wN(x, n) <= wy + wz;
          c = c && mask::weight_wN(x ^ mask::pair(j, n), n) <= wy + wz + 1;
          checks += 2;
        }
      }
    }
    const std::string tag = " at N=" + std::to_string(n);
    r.require(nz, "site count identity" + tag);
    r.require(a, "shifted-sum weight bound" + tag);
    r.require(b, "translation weight bound" + tag);
    r.require(c, "shifted-sum-with-move weight bound" + tag);
    r.require(d, "single move weight bound" + tag);
    r.require(parity, "moves change parity" + tag);
    r.require(alpha(SiteSet::of(n, {n, 1})) == 1, "alpha({N,1}) != 1" + tag);
    r.require(beta(n, 2) == n - 1, "beta_2 != N-1" + tag);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.require(secs <= 30.0, fmt("took %.1f s", secs));
  r.note(std::to_string(checks) + fmt(" inequality checks in %.2f s", secs));
  return r.finish();
}

Outcome eigenstates() {
  Report r;
  const int n = 9;
  const double eps = 0.05;
  TruncationPolicy pol;
  pol.w_max = 6;
  const auto spec = ModelSpec::seamed(Model::XzAf, n, eps);
  const auto g = solve_ground(ModelSpec::uniform(Model::XzAf, n, eps), pol);
  const auto sol = solve_interface(Model::XzAf, g, compute_h(g, pol), spec, pol);
  const auto sectors = sector_spectra(build_hamiltonian(spec, Frame::RotatedSublattice), build_symmetries(spec).t);
  double worst = 0.0, worst_gap = 0.0;
  for (int j = 0; j < 2 * n; ++j) {
    double exact = std::numeric_limits<double>::infinity();
    for (const auto& sec : sectors)
      if (sec.k_index == j && sec.sector_dimension > 0) exact = std::min(exact, sec.lowest_energy);
    if (!std::isfinite(exact)) continue;
    const auto w = wavefunction_residual(g, sol, j, spec);
    const double gap = std::abs(w.rayleigh_energy - exact);
    // the exact eigenvalue itself carries round-off of order eps_mach * |H|
    const double floor = 64 * std::numeric_limits<double>::epsilon() * n * (1 + eps);
    worst = std::max(worst, w.residual);
    worst_gap = std::max(worst_gap, gap);
    r.require(w.residual <= 1e-4, "j=" + std::to_string(j) + fmt(" residual %.2e", w.residual));
    r.require(gap <= std::max(w.residual, floor), "j=" + std::to_string(j) + fmt2(" |E_rayleigh - E_ed| %.2e > residual %.2e", gap,
                                                                 w.residual));
  }
  r.note(fmt2("max residual %.2e, max energy gap %.2e", worst, worst_gap));
  return r.finish();
}

Outcome determinism() {
  Report r;
  ExperimentConfig cfg;
  cfg.model = Model::XxzAf;
  cfg.n_values = {5, 7};
  cfg.epsilons = {0.03, 0.05};
  cfg.pipelines = {Pipeline::Crossval};
  const auto base = std::filesystem::temp_directory_path() / "kinkchain_acceptance";
  std::filesystem::remove_all(base);
  cfg.out = base / "a";
  const auto a = run(cfg);
  cfg.out = base / "b";
  cfg.workers = 2;
  const auto b = run(cfg);
  r.require(a.exit_code == kExitOk && b.exit_code == kExitOk, "run did not finish cleanly");
  r.require(a.files.size() == b.files.size(), "file lists differ");
  for (std::size_t i = 0; i < std::min(a.files.size(), b.files.size()); ++i)
    r.require(slurp(a.files[i]) == slurp(b.files[i]), a.files[i].filename().string() + " differs");

  int round_trips = 0;
  for (const auto& f : a.files) {
    if (f.filename() == "summary.json") continue;
    const auto doc = Json::parse(slurp(f));
    r.require(validate_result_document(doc).empty(), f.filename().string() + " fails the schema");
    const bool g = same_fields(to_json(ground_from_json(doc["ground"])), doc["ground"]);
    const bool i = same_fields(to_json(interface_from_json(doc["interface"])), doc["interface"]);
    const bool d = same_fields(to_json(dispersion_from_json(doc["dispersion"])), doc["dispersion"]);
    r.require(g && i && d, f.filename().string() + " does not round-trip");
    r.require(Json::parse(doc.dump()) == doc, f.filename().string() + " text round trip");
    ++round_trips;
  }
  std::filesystem::remove_all(base);
  r.note(std::to_string(a.files.size()) + " files identical, " + std::to_string(round_trips) + " documents round-trip");
  return r.finish();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"ground energies match ED", ground_oracle},
      {"ground pointwise residual", ground_residual},
      {"parity splitting decays geometrically", parity_splitting},
      {"antiferromagnetic interface disperses", af_instability},
      {"antiferromagnetic coefficient decay", coefficient_decay},
      {"ferromagnetic interface is flat", ferro_flatness},
      {"symmetry identities", symmetry_identities},
      {"combinatorial inequalities", combinatorics},
      {"eigenstate reconstruction", eigenstates},
      {"determinism and serialization", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu: %s [%.2f s] %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
