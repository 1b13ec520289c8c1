#include <CLI11.hpp>
#include <iostream>

#include "kinkchain/errors.hpp"
#include "kinkchain/runner.hpp"

int main(int argc, char** argv) {
  using namespace kinkchain;

  CLI::App app{"Cluster-expansion ground state and kink dispersion for XZ/XXZ chains"};
  std::string model = "xz-af";
  std::vector<int> ns;
  std::vector<double> epsilons;
  std::vector<std::string> pipelines{"ground"};
  ExperimentConfig config;
  std::string out = "results";

  app.add_option("--model", model, "xz-af | xxz-af | xxz-ferro")->capture_default_str();
  app.add_option("--n", ns, "Chain length (repeatable)")->required()->take_all();
  app.add_option("--epsilon", epsilons, "Coupling epsilon (repeatable)")->required()->take_all();
  app.add_option("--w-max", config.policy.w_max, "Largest retained weight")->capture_default_str();
  app.add_option("--n-max", config.policy.n_max, "Exponential series order (0: w_max + 2)")->capture_default_str();
  app.add_option("--alpha-max", config.policy.alpha_max, "Ferro hop-distance cutoff (0: N - 1)")->capture_default_str();
  app.add_option("--tol", config.policy.tol, "Convergence threshold")->capture_default_str();
  app.add_option("--max-iter", config.policy.max_iter, "Iteration cap")->capture_default_str();
  app.add_option("--norm-m", config.policy.norm_m, "Norm constant M")->capture_default_str();
  app.add_flag("--jacobi", config.policy.jacobi, "Plain Jacobi sweeps in the interface solver");
  app.add_option("--pipeline", pipelines, "ground | interface | ed | crossval | extrapolate (repeatable)")
      ->take_all()
      ->capture_default_str();
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--format", config.format, "json | csv")->capture_default_str();
  app.add_option("--workers", config.workers, "Concurrent sweep cells")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    config.model = model_from_string(model);
    config.n_values = ns;
    config.epsilons = epsilons;
    config.pipelines.clear();
    for (const auto& p : pipelines) config.pipelines.insert(pipeline_from_string(p));
    config.out = out;
    const auto result = run(config);
    for (const auto& f : result.files) std::cout << f.string() << "\n";
    if (result.exit_code != kExitOk) std::cerr << "some cells did not complete, see summary.json\n";
    return result.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvariantViolationError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartial;
  }
}
