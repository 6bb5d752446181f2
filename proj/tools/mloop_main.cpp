#include <iostream>

#include <CLI11.hpp>

#include "mloop/commands.hpp"
#include "mloop/errors.hpp"

int main(int argc, char **argv) {
  CLI::App app{"exact workbench for twisted multiloop algebras and their universal central extension"};
  app.require_subcommand(1);

  std::string config_path;
  mloop::CommandOptions opt;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--config", config_path, "path to the JSON run configuration")->required();
    cmd->add_option("--out", opt.out_dir, "directory for the TSV/JSON report files");
    cmd->add_option("--jobs", opt.jobs, "worker threads for per-weight scans")->default_val(1u);
    cmd->add_option("--seed", opt.seed, "seed for randomized property checks")->default_val(12345u);
  };

  auto *construct = app.add_subcommand("construct", "build the algebra and report its structure");
  auto *verify = app.add_subcommand("verify", "run the exact identity suite");
  auto *h2scan = app.add_subcommand("h2-scan", "brute-force H^2 per weight and certify universality");
  auto *densdemo = app.add_subcommand("density-demo", "spectral and Bernstein convergence tables");
  for (auto *cmd : {construct, verify, h2scan, densdemo})
    add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = mloop::RunConfig::from_file(config_path);
    if (construct->parsed())
      return mloop::cmd_construct(cfg, opt, std::cout);
    if (verify->parsed())
      return mloop::cmd_verify(cfg, opt, std::cout);
    if (h2scan->parsed())
      return mloop::cmd_h2_scan(cfg, opt, std::cout);
    return mloop::cmd_density(cfg, opt, std::cout);
  } catch (const mloop::ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mloop::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
