#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result
{
   int status = -1;
   std::string output;
};

// Runs the command line tool with stdout and stderr captured into a file.
Result ntaxis(const std::string& args, const fs::path& dir)
{
   const fs::path log = dir / "console.txt";
   const std::string cmd = std::string("\"") + NTAXIS_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
   const int raw = std::system(cmd.c_str());
   Result r;
   r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
   std::ifstream in(log);
   std::ostringstream s;
   s << in.rdbuf();
   r.output = s.str();
   return r;
}

fs::path fresh(const std::string& name)
{
   const fs::path dir = fs::current_path() / "integration_scratch" / name;
   fs::remove_all(dir);
   fs::create_directories(dir);
   return dir;
}

fs::path write_config(const fs::path& dir, const std::string& body)
{
   const fs::path p = dir / "run.conf";
   std::ofstream(p) << body << "output = " << (dir / "out").string() << "\n";
   return p;
}

std::vector<std::string> split(const std::string& line)
{
   std::vector<std::string> out;
   std::istringstream in(line);
   for (std::string c; std::getline(in, c, ',');)
   {
      out.push_back(c);
   }
   return out;
}

} // namespace

TEST_CASE("bump run at alpha 0.5 completes with finite sup u")
{
   const fs::path dir = fresh("bump");
   const fs::path conf = write_config(dir, "alpha = 0.5\nepsilon = 0.01\ncells = 128\nt_end = 1\nell = 1\n"
                                           "initial = gaussian_bump\nu_base = 0\nu_amp = 1\nv_amp = 0.3\n"
                                           "monitor_every = 0.1\nsnapshot_every = 0.5\n");
   const Result r = ntaxis("run \"" + conf.string() + "\"", dir);
   INFO(r.output);
   REQUIRE(r.status == 0);

   std::ifstream in(dir / "out" / "monitors.csv");
   std::string header, line, last;
   std::getline(in, header);
   int rows = 0;
   while (std::getline(in, line))
   {
      last = line;
      ++rows;
   }
   CHECK(rows == 11);
   const auto names = split(header);
   const auto values = split(last);
   REQUIRE(names.size() == values.size());
   for (std::size_t k = 0; k < names.size(); ++k)
   {
      if (names[k] == "sup_u")
      {
         CHECK(std::isfinite(std::stod(values[k])));
      }
      if (names[k] == "t")
      {
         CHECK(std::stod(values[k]) == doctest::Approx(1.0));
      }
   }
   CHECK(fs::exists(dir / "out" / "snapshot_0002.bin"));
   CHECK(fs::file_size(dir / "out" / "residuals.csv") > 0);
}

TEST_CASE("a fixed oversized step exits nonzero")
{
   const fs::path dir = fresh("huge_dt");
   const fs::path conf = write_config(dir, "alpha = 1\nepsilon = 0.01\ncells = 64\nt_end = 1\n"
                                           "initial = gaussian_bump\nu_base = 0\nu_amp = 1\nv_amp = 0.3\n"
                                           "cfl_safety = 1\nfixed_dt = true\ndt_max = 10\nmax_rejects = 4\n");
   const Result r = ntaxis("run \"" + conf.string() + "\"", dir);
   CHECK(r.status != 0);
   CHECK(r.output.find("positivity unrecoverable") != std::string::npos);
}

TEST_CASE("bad configurations are rejected with the key name")
{
   const fs::path dir = fresh("bad_conf");
   const fs::path conf = write_config(dir, "alpha = 1\nepsilon = 0.01\ncells = 64\nt_end = 1\nbanana = 1\n");
   const Result r = ntaxis("run \"" + conf.string() + "\"", dir);
   CHECK(r.status != 0);
   CHECK(r.output.find("unknown key banana") != std::string::npos);
}

TEST_CASE("sweep subcommand writes one row per alpha")
{
   const fs::path dir = fresh("sweep");
   const fs::path conf = write_config(dir, "alpha = 1\nepsilon = 0.01\ncells = 32\nt_end = 0.1\nell = 1\n"
                                           "initial = cosine_mix\nu_amp = 0.5\nv_amp = 0.3\n");
   const Result r = ntaxis("sweep \"" + conf.string() + "\" --alphas 0.5,1.25,1.75 --threads 3", dir);
   INFO(r.output);
   REQUIRE(r.status == 0);
   std::ifstream in(dir / "out" / "sweep.csv");
   std::vector<std::string> lines;
   for (std::string l; std::getline(in, l);)
   {
      lines.push_back(l);
   }
   REQUIRE(lines.size() == 4);
   CHECK(lines[1].find(",weak,ok") != std::string::npos);
   CHECK(lines[2].find(",moderate,ok") != std::string::npos);
   CHECK(lines[3].find(",strong,ok") != std::string::npos);
}

TEST_CASE("eps-study subcommand")
{
   const fs::path dir = fresh("eps");
   const fs::path conf = write_config(dir, "alpha = 1\nepsilon = 0.1\ncells = 32\nt_end = 0.05\n"
                                           "initial = gaussian_bump\nu_base = 0\nu_amp = 1\nv_amp = 0.3\n");
   const Result r = ntaxis("eps-study \"" + conf.string() + "\" --eps 0.1,0.01,0.001", dir);
   INFO(r.output);
   CHECK(r.status == 0);
   CHECK(fs::exists(dir / "out" / "eps_study.csv"));
}

TEST_CASE("verification subcommands succeed")
{
   const fs::path dir = fresh("verify");
   const Result e = ntaxis("verify-exponents --samples 100 --seed 3", dir);
   INFO(e.output);
   CHECK(e.status == 0);
   CHECK(e.output.find("\"violations\":0") != std::string::npos);

   const Result i = ntaxis("verify-inequalities --count 10 --seed 4", dir);
   INFO(i.output);
   CHECK(i.status == 0);
   CHECK(i.output.find("log_hessian") != std::string::npos);
   CHECK(i.output.find("sobolev_product") != std::string::npos);

   const Result t = ntaxis("exponents --kind strong --start -0.5 --alpha 1.75 --count 3", dir);
   CHECK(t.status == 0);
   CHECK(t.output.find("k,") == 0);
}

TEST_CASE("usage errors exit nonzero")
{
   const fs::path dir = fresh("usage");
   CHECK(ntaxis("", dir).status != 0);
   CHECK(ntaxis("run /nonexistent/file.conf", dir).status != 0);
   CHECK(ntaxis("exponents --kind sideways", dir).status != 0);
}
