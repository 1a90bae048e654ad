#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "skspin/experiment.hpp"

using namespace skspin;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string base_config(const std::string& task, const std::string& extra) {
  return "task = " + task + "\n" +
         "lattice.sites = 2\n"
         "spin.two_s = 1\n"
         "term = -0.5 s1(0) s1(1)\n"
         "term = -0.5 s3(0) s3(1)\n"
         "contour.beta = 3.0\n"
         "contour.t_max = 10.0\n" +
         extra;
}

int run_cli_command(const std::string& args) {
  const std::string cmd = std::string(SKSPIN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config parsing happy path") {
  const ExperimentConfig config = parse_config_text(
      base_config("lattice-correlator",
                  "contour.n_slices = 40\n"
                  "quadrature.n_theta = 6\n"
                  "quadrature.n_phi = 8\n"
                  "quadrature.doubling_check = off\n"
                  "observable = unordered s1(0) s1(1) t=1:3:1 tprime=0\n"
                  "output.path = /tmp/skspin_t.csv\n"),
      "inline");
  CHECK(config.task == "lattice-correlator");
  CHECK(config.hamiltonian.terms.size() == 2);
  CHECK(config.hamiltonian.terms[0].coupling == -0.5);
  CHECK(config.hamiltonian.terms[0].factors[1].site == 1);
  CHECK(config.beta == 3.0);
  CHECK(config.n_slices_list == std::vector<long>{40});
  CHECK(config.propagator.grid.n_theta == 6);
  CHECK_FALSE(config.propagator.doubling_check);
  REQUIRE(config.observables.size() == 1);
  CHECK(config.observables[0].ordering == Ordering::unordered);
  CHECK(config.observables[0].xp == 1);
  CHECK(config.observables[0].times.size() == 3);
  CHECK_NOTHROW(validate_config(config));
}

TEST_CASE("component aliases x/y/z parse") {
  const ExperimentConfig config = parse_config_text(
      base_config("exact",
                  "observable = unordered sx(0) sy(1) t=1 tprime=0\n"
                  "output.path = /tmp/skspin_t.csv\n"),
      "inline");
  CHECK(config.observables[0].i == 1);
  CHECK(config.observables[0].ip == 2);
}

TEST_CASE("parse errors carry the config_parse code") {
  const auto expect_parse_error = [](const std::string& text) {
    try {
      parse_config_text(text, "inline");
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::config_parse);
    }
  };
  expect_parse_error("lattice.sites = 2\nspin.two_s = 1\n");            // no task
  expect_parse_error("task = exact\nmystery.key = 1\n");                // unknown key
  expect_parse_error("task = exact\nlattice.sites = 2\n");              // no two_s
  expect_parse_error(base_config("exact", "observable = bogus\n"));     // bad observable
  expect_parse_error(base_config("exact", "term = notanumber s1(0)\n"));
}

TEST_CASE("validation errors carry the config_validation code") {
  const auto expect_validation_error = [](const std::string& text) {
    const ExperimentConfig config = parse_config_text(text, "inline");
    try {
      validate_config(config);
      CHECK(false);
    } catch (const Error& e) {
      const bool config_level = e.code() == ErrorCode::config_validation ||
                                e.code() == ErrorCode::bad_site_index ||
                                e.code() == ErrorCode::same_site_product;
      CHECK(config_level);
    }
  };
  expect_validation_error(base_config("frobnicate", "output.path = x\n"));  // unknown task
  expect_validation_error(base_config("exact", "observable = unordered s1(0) s1(1) t=1 tprime=0\n"));  // no output
  expect_validation_error(base_config("exact", "output.path = x\n"));  // no observable
  expect_validation_error(
      base_config("lattice-correlator",
                  "observable = unordered s1(0) s1(1) t=1 tprime=0\noutput.path = x\n"));  // no N
  expect_validation_error(base_config(
      "exact", "observable = unordered s1(0) s1(7) t=1 tprime=0\noutput.path = x\n"));  // site
  expect_validation_error(base_config("mc",
                                      "contour.n_slices = 400\n"
                                      "observable = unordered s1(0) s1(1) t=0.5 tprime=0\n"
                                      "output.path = x\n"));  // contour too big for mc
}

TEST_CASE("exact task on free spins writes the 1/4-and-0 pattern") {
  const std::string out = "/tmp/skspin_exact_free.csv";
  const ExperimentConfig config = parse_config_text(
      "task = exact\n"
      "lattice.sites = 1\n"
      "spin.two_s = 1\n"
      "contour.beta = 2.0\n"
      "contour.t_max = 4.0\n"
      "observable = unordered s3(0) s3(0) t=0:4:0.5 tprime=0\n"
      "observable = unordered s1(0) s2(0) t=0:4:0.5 tprime=0\n"
      "output.path = " + out + "\n",
      "inline");
  const RunOutcome outcome = run_experiment(config);
  CHECK(outcome.exit_code == 0);
  const std::string text = slurp(out);
  CHECK(text.find("# config.task = exact") != std::string::npos);
  CHECK(text.find("# hamiltonian.hash = ") != std::string::npos);
  std::istringstream lines(text);
  std::string line;
  int checked_quarter = 0, checked_zero = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("observable", 0) == 0) continue;
    if (line.find("s3(0)_s3(0)") != std::string::npos) {
      CHECK(line.find(",0.25,") != std::string::npos);
      ++checked_quarter;
    }
    if (line.find("s1(0)_s2(0)") != std::string::npos) {
      ++checked_zero;
    }
  }
  CHECK(checked_quarter == 9);
  CHECK(checked_zero == 9);
  std::remove(out.c_str());
}

TEST_CASE("non-mc outputs are byte-identical across runs") {
  const std::string out = "/tmp/skspin_det.csv";
  const std::string text = base_config(
      "lattice-correlator",
      "contour.n_slices = 40\n"
      "quadrature.n_theta = 6\n"
      "quadrature.n_phi = 8\n"
      "quadrature.doubling_check = off\n"
      "observable = unordered s1(0) s1(1) t=1:3:1 tprime=0\n"
      "output.path = " + out + "\n");
  run_experiment(parse_config_text(text, "inline"));
  const std::string first = slurp(out);
  run_experiment(parse_config_text(text, "inline"));
  CHECK(first == slurp(out));
  std::remove(out.c_str());
}

TEST_CASE("mc outputs are byte-identical at fixed seed") {
  const std::string out = "/tmp/skspin_mc_det.csv";
  const std::string text = base_config("mc",
                                       "contour.beta = 1.0\n"
                                       "contour.t_max = 1.0\n"
                                       "contour.n_slices = 2\n"
                                       "quadrature.n_theta = 6\n"
                                       "quadrature.n_phi = 8\n"
                                       "quadrature.doubling_check = off\n"
                                       "observable = unordered s1(0) s1(1) t=0.5 tprime=0\n"
                                       "mc.n_samples = 4000\n"
                                       "mc.n_therm = 400\n"
                                       "mc.n_chains = 2\n"
                                       "mc.seed = 77\n"
                                       "output.path = " + out + "\n");
  run_experiment(parse_config_text(text, "inline"));
  const std::string first = slurp(out);
  run_experiment(parse_config_text(text, "inline"));
  CHECK(first == slurp(out));
  CHECK(first.find("sign_collapse") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("json output embeds config, results and diagnostics") {
  const std::string out = "/tmp/skspin_json.json";
  const std::string text = base_config(
      "ztilde-check", "contour.n_slices = 50,100\noutput.path = " + out + "\noutput.format = json\n");
  run_experiment(parse_config_text(text, "inline"));
  const std::string body = slurp(out);
  CHECK(body.find("\"config\"") != std::string::npos);
  CHECK(body.find("\"results\"") != std::string::npos);
  CHECK(body.find("\"diagnostics\"") != std::string::npos);
  CHECK(body.find("\"hamiltonian_hash\"") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("ztilde-check deviation shrinks with N") {
  const std::string out = "/tmp/skspin_zt.csv";
  const std::string text =
      base_config("ztilde-check", "contour.n_slices = 50,100,200\noutput.path = " + out + "\n");
  run_experiment(parse_config_text(text, "inline"));
  std::istringstream lines(slurp(out));
  std::string line;
  std::vector<double> devs;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("n_slices", 0) == 0) continue;
    const auto last_comma = line.find_last_of(',');
    devs.push_back(std::stod(line.substr(last_comma + 1)));
  }
  REQUIRE(devs.size() == 3);
  CHECK(devs[0] > devs[1]);
  CHECK(devs[1] > devs[2]);
  std::remove(out.c_str());
}

TEST_CASE("cli subcommands and exit codes") {
  CHECK(run_cli_command("version") == 0);
  CHECK(run_cli_command("") == 2);
  CHECK(run_cli_command("bogus") == 2);
  CHECK(run_cli_command("run /nonexistent.cfg") == 2);

  const std::string good = "/tmp/skspin_cli_good.cfg";
  {
    std::ofstream os(good);
    os << base_config("ztilde-check",
                      "contour.n_slices = 25,50\noutput.path = /tmp/skspin_cli_out.csv\n");
  }
  CHECK(run_cli_command("validate " + good) == 0);
  CHECK(run_cli_command("run " + good) == 0);
  CHECK(std::ifstream("/tmp/skspin_cli_out.csv").good());

  const std::string bad = "/tmp/skspin_cli_bad.cfg";
  {
    std::ofstream os(bad);
    os << base_config("exact", "output.path = /tmp/x.csv\n");  // no observable
  }
  CHECK(run_cli_command("validate " + bad) == 3);

  const std::string unparsable = "/tmp/skspin_cli_unparsable.cfg";
  {
    std::ofstream os(unparsable);
    os << "task exact  # missing equals\n";
  }
  CHECK(run_cli_command("validate " + unparsable) == 2);

  std::remove(good.c_str());
  std::remove(bad.c_str());
  std::remove(unparsable.c_str());
  std::remove("/tmp/skspin_cli_out.csv");
}

TEST_CASE("bundled configs validate") {
  for (const char* name :
       {"demo_fig2.cfg", "demo_table1.cfg", "demo_mc.cfg", "demo_exact.cfg", "demo_ztilde.cfg"}) {
    const std::string path = std::string(SKSPIN_CONFIG_DIR) + "/" + name;
    CAPTURE(path);
    CHECK_NOTHROW(validate_config(parse_config_file(path)));
  }
}
