#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "funkvol/cli.hpp"

int main(int argc, char** argv) {
  using funkvol::RunConfig;
  CLI::App app{"Holmes-Thompson volumes, growth coefficients and Santalo points "
               "in the Funk geometry of convex polytopes"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::map<std::string, RunConfig::Format> formats{{"text", RunConfig::Format::text},
                                                   {"json", RunConfig::Format::json},
                                                   {"csv", RunConfig::Format::csv}};

  auto add_common = [&](CLI::App* c, bool needs_input) {
    auto* in = c->add_option("-i,--input", cfg.input_path, "polytope JSON file");
    if (needs_input) in->required()->check(CLI::ExistingFile);
    c->add_option("-t,--tol", cfg.tol, "tolerance (per-command default when omitted)");
    c->add_option("-f,--format", cfg.format, "output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    return c;
  };

  auto* volume = add_common(app.add_subcommand("volume", "ball volumes at given radii"), true);
  volume->add_option("-R,--radii", cfg.radii, "ball radii");
  volume->add_option("-c,--center", cfg.center, "ball center (origin when omitted)");

  auto* coeffs = add_common(
      app.add_subcommand("coeffs", "exact growth coefficients against a numeric fit"), true);
  coeffs->add_option("-R,--radii", cfg.radii, "fit grid (needs >= 3 radii, max >= 15)");
  coeffs->add_option("-c,--center", cfg.center, "expansion point (origin when omitted)");

  auto* santalo =
      add_common(app.add_subcommand("santalo", "limit and finite-radius Santalo points"), true);
  santalo->add_option("-R,--radii", cfg.radii, "radii for the finite minimizers");

  auto* simplex = add_common(
      app.add_subcommand("simplex", "simplex ball volumes from the dimension recursion"), false);
  simplex->add_option("-n,--dim", cfg.simplex_dim, "simplex dimension")
      ->check(CLI::Range(1, 6));
  simplex->add_option("-R,--radii", cfg.radii, "ball radii");

  auto* hanner =
      add_common(app.add_subcommand("hanner", "Hanner bodies from a product/polar spec"), false);
  hanner->add_option("-s,--spec", cfg.hanner_spec,
                     "e.g. polar(product(segment,segment,segment))");
  hanner->add_option("-R,--radii", cfg.radii, "ball radii");

  auto* polygon = add_common(
      app.add_subcommand("polygon", "second coefficient, its gradient and dV/dlambda"), true);
  polygon->add_option("-l,--lambdas", cfg.lambdas, "ball scale parameters in (0,1)");

  auto* verify =
      add_common(app.add_subcommand("verify", "invariance and structure checks"), true);
  verify->add_option("--seed", cfg.seed, "seed for the randomized checks");

  auto* sweep =
      add_common(app.add_subcommand("sweep", "CSV of volumes and fit residuals over a grid"), true);
  sweep->add_option("-R,--radii", cfg.radii, "grid radii");
  sweep->add_option("-c,--center", cfg.center, "ball center (origin when omitted)");

  CLI11_PARSE(app, argc, argv);

  if (volume->parsed()) cfg.command = RunConfig::Command::volume;
  if (coeffs->parsed()) cfg.command = RunConfig::Command::coeffs;
  if (santalo->parsed()) cfg.command = RunConfig::Command::santalo;
  if (simplex->parsed()) cfg.command = RunConfig::Command::simplex;
  if (hanner->parsed()) cfg.command = RunConfig::Command::hanner;
  if (polygon->parsed()) cfg.command = RunConfig::Command::polygon;
  if (verify->parsed()) cfg.command = RunConfig::Command::verify;
  if (sweep->parsed()) cfg.command = RunConfig::Command::sweep;

  return funkvol::run_command(cfg, std::cout, std::cerr);
}
