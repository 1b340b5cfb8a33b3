// nssbell -- batch experiments for the reference-frame-free CHSH protocol.
//
// Exit codes: 0 success, 1 usage error, 2 runtime fault.

#include "nssbell/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace nssbell;

  CLI::App app{"Noiseless-subsystem CHSH simulator"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  std::string channel = "independent";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Base RNG seed (recorded in the CSV header)")
        ->capture_default_str();
    sub->add_option("--workers", cfg.workers, "Worker threads; results depend on this")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "Output CSV path, '-' for stdout")->required();
  };

  auto* scan = app.add_subcommand("chsh-scan", "CHSH value over a phi grid on [0, pi/2]");
  common(scan);
  scan->add_option("--phi-steps", cfg.phi_steps, "Grid points")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  scan->add_option("--trials", cfg.trials, "Monte Carlo trials per setting pair")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scan->add_option("--channel", channel, "Noise for the Monte Carlo column")
      ->check(CLI::IsMember({"none", "independent", "shared"}))
      ->capture_default_str();

  auto* conv = app.add_subcommand("twirl-converge", "Monte Carlo vs exact twirl distance");
  common(conv);
  conv->add_option("--samples", cfg.sample_counts, "Sample counts to evaluate")
      ->delimiter(',')
      ->capture_default_str();
  conv->add_option("--repeats", cfg.repeats, "Random inputs per sample count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* orth = app.add_subcommand("orthogonality", "Monte Carlo check of D-matrix orthogonality");
  common(orth);
  orth->add_option("--samples", cfg.samples, "Haar samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* biref = app.add_subcommand("biref", "Birefringence phase over a mu grid");
  common(biref);
  biref->add_option("--k2", cfg.biref.k2, "Coupling constant")->capture_default_str();
  biref->add_option("--m-tilde", cfg.biref.m_tilde, "Torsion mass (inverse length)")
      ->capture_default_str();
  biref->add_option("--lambda", cfg.biref.lambda, "Wavelength")->capture_default_str();
  biref->add_option("--radius", cfg.biref.radius, "Stellar radius")->capture_default_str();
  biref->add_option("--mu-min", cfg.mu_min, "Smallest mu in the grid")->capture_default_str();
  biref->add_option("--mu-steps", cfg.mu_steps, "Grid points on [mu-min, 1]")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* tetrad = app.add_subcommand("tetrad-check", "Tetrad/metric identity residuals");
  common(tetrad);
  tetrad->add_option("--metric", cfg.metric, "minkowski or schwarzschild")
      ->check(CLI::IsMember({"minkowski", "schwarzschild"}))
      ->capture_default_str();
  tetrad->add_option("--mass", cfg.mass, "Mass M (geometric units)")->capture_default_str();
  tetrad->add_option("--radii", cfg.radii, "Radii in units of M")
      ->delimiter(',')
      ->capture_default_str();
  tetrad->add_option("--theta", cfg.theta, "Polar angle of the sample points")
      ->capture_default_str();
  tetrad->add_option("--tol", cfg.tolerance, "Pass tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    cfg.channel = parse_channel(channel);
    if (scan->parsed()) cmd_chsh_scan(cfg);
    else if (conv->parsed()) cmd_twirl_converge(cfg);
    else if (orth->parsed()) cmd_orthogonality(cfg);
    else if (biref->parsed()) cmd_biref(cfg);
    else if (tetrad->parsed()) cmd_tetrad_check(cfg);
  } catch (const std::exception& e) {
    std::cerr << "nssbell: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
