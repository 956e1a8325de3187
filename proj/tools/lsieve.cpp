#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "lsieve/cli.hpp"

namespace {

void add_list(CLI::App* app, const std::string& flag, std::vector<double>& target, const std::string& help) {
  app->add_option(flag, target, help)->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  using namespace lsieve::cli;
  RunConfig cfg;
  std::string format = "csv";
  std::string output;

  CLI::App app{"Numerical checks of large sieve inequalities and related asymptotics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("LSIEVE_FORMAT");
  app.add_option("--output", output, "Write the report here instead of standard output");
  app.add_flag("--sabotage", cfg.sabotage, "Halve every right side")->group("");

  auto* verify = app.add_subcommand("verify", "Evaluate one inequality on generated coefficients");
  verify->add_option("--ineq", cfg.ineq, "mvs, bd, thm12, eq14, eq15, eq16, thm13, prop21, prop22, thm21")->required();
  verify->add_option("--N", cfg.N, "Sequence length")->capture_default_str();
  verify->add_option("--Q", cfg.Q, "Modulus bound")->capture_default_str();
  verify->add_option("--M", cfg.M, "Offset: coefficients live on (M, M+N]")->capture_default_str();
  verify->add_option("--trials", cfg.trials, "Random sequences to draw")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();
  verify->add_option("--coeffs", cfg.coeffs, "random, flat, primes, lambda, lambda-normalized");
  verify->add_option("--R", cfg.R, "Moduli bound for prop21 (moduli 1..R)")->capture_default_str();
  verify->add_option("--alpha", cfg.alpha, "Threshold exponent for prop22")->capture_default_str();
  add_list(verify, "--P", cfg.P, "Excluded primes for thm12");
  verify->add_option("--q", cfg.q, "Modulus for eq15")->capture_default_str();
  verify->add_option("--X", cfg.X, "Range for eq15")->capture_default_str();

  auto* constants = app.add_subcommand("constants", "Euler-product constant, L(1, chi_4) and Dirichlet series checks");
  constants->add_option("--cutoff", cfg.cutoff, "Truncation point")->capture_default_str();

  auto* scan = app.add_subcommand("scan", "Parameter grids with fitted constants");
  scan->add_option("scan", cfg.scan, "lemma21, bt, exceptional or prop32")
      ->required()
      ->check(CLI::IsMember({"lemma21", "bt", "exceptional", "prop32"}));
  add_list(scan, "--q", cfg.q_list, "Moduli (lemma21)");
  add_list(scan, "--x", cfg.x_list, "Ranges (lemma21)");
  add_list(scan, "--N", cfg.N_list, "Lengths (bt, exceptional, prop32)");
  add_list(scan, "--D", cfg.D_list, "Conductors (exceptional, prop32)");
  add_list(scan, "--eps", cfg.eps_list, "Epsilons (prop32)");
  scan->add_option("--qmax", cfg.q_max, "Largest scanned modulus (prop32)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.format = format == "json" ? lsieve::Format::json : lsieve::Format::csv;
  if (output.empty()) return run(cfg, std::cout, std::cerr);
  std::ofstream file(output);
  if (!file) {
    std::cerr << "lsieve: cannot open " << output << '\n';
    return kUsage;
  }
  return run(cfg, file, std::cerr);
}
