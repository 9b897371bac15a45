// Command line front end: ntaxis <run|sweep|eps-study|verify-inequalities|
// exponents|verify-exponents> ...

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "ntaxis/commands.hpp"
#include "ntaxis/error.hpp"

int main(int argc, char** argv)
{
   using namespace ntaxis;

   CLI::App app{"Finite volume solver and verification suite for a doubly degenerate nutrient taxis system"};
   app.require_subcommand(1);

   std::string config_path;
   unsigned threads = 0;

   auto* run = app.add_subcommand("run", "Run one configuration");
   run->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);

   std::vector<double> alphas;
   auto* sweep = app.add_subcommand("sweep", "Run one configuration for several alpha");
   sweep->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
   sweep->add_option("--alphas", alphas, "Comma separated alpha values")->delimiter(',');
   sweep->add_option("--threads", threads, "Worker threads (0: hardware)");

   std::vector<double> eps_list;
   auto* eps = app.add_subcommand("eps-study", "Compare final states across epsilon");
   eps->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
   eps->add_option("--eps", eps_list, "Comma separated, nonincreasing epsilon values")
       ->delimiter(',')
       ->required();
   eps->add_option("--threads", threads, "Worker threads (0: hardware)");

   std::size_t count = 100;
   std::uint64_t seed = 1;
   auto* ineq = app.add_subcommand("verify-inequalities", "Randomized functional inequality batches");
   ineq->add_option("--count", count, "Random fields per batch");
   ineq->add_option("--seed", seed, "RNG seed");

   SequenceKind kind = SequenceKind::moderate;
   double start = 2.0;
   double alpha = 1.25;
   int length = 10;
   const std::map<std::string, SequenceKind> kinds = {
       {"moderate", SequenceKind::moderate},
       {"moderate-hat", SequenceKind::moderate_hat},
       {"strong", SequenceKind::strong}};
   auto* expo = app.add_subcommand("exponents", "Print a bootstrap exponent sequence as CSV");
   expo->add_option("--kind", kind, "moderate | moderate-hat | strong")
       ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
   expo->add_option("--start", start, "m0, mhat0 or q0");
   expo->add_option("--alpha", alpha, "Taxis exponent");
   expo->add_option("--count", length, "Number of terms");

   std::size_t samples = 1000;
   int iterations = 200;
   auto* vexp = app.add_subcommand("verify-exponents", "Randomized check of the exponent recursions");
   vexp->add_option("--samples", samples, "Samples per recursion");
   vexp->add_option("--seed", seed, "RNG seed");
   vexp->add_option("--iterations", iterations, "Steps per sequence");

   CLI11_PARSE(app, argc, argv);

   try
   {
      if (run->parsed())
      {
         return cmd_run(load_config(config_path), std::cout, std::cerr);
      }
      if (sweep->parsed())
      {
         const SweepReport report = cmd_sweep(load_config(config_path), alphas, threads);
         std::cout << report.csv();
         return 0;
      }
      if (eps->parsed())
      {
         const EpsStudyReport report = cmd_eps_study(load_config(config_path), eps_list, threads);
         std::cout << report.csv();
         return 0;
      }
      if (ineq->parsed())
      {
         return cmd_verify_inequalities(count, seed, std::cout);
      }
      if (expo->parsed())
      {
         cmd_exponents(kind, start, alpha, length, std::cout);
         return 0;
      }
      if (vexp->parsed())
      {
         return cmd_verify_exponents(samples, seed, iterations, std::cout);
      }
   }
   catch (const Error& e)
   {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
   }
   return 0;
}
