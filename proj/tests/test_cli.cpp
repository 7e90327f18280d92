#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "shelfopt/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kData = SHELFOPT_TEST_DATA;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string &args) {
  const std::string cmd = std::string(SHELFOPT_CLI) + " " + args + " 2>&1";
  Run r;
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 512> buf{};
  while (fgets(buf.data(), static_cast<int>(buf.size()), pipe))
    r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path temp_dir(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("shelfopt_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("cli optimize writes a plan") {
  const fs::path out = temp_dir("optimize") / "plan.json";
  const Run r = run("optimize --scenario " + (kData / "golden/scenario.json").string() +
                    " --items " + (kData / "golden/items.csv").string() + " --out " +
                    out.string());
  CHECK(r.code == 0);
  REQUIRE(fs::exists(out));
  std::ifstream in(out);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto report = shelfopt::report_from_json(text);
  CHECK(report.objective == 25.0);
}

TEST_CASE("cli weight overrides take precedence") {
  const Run r = run("curve --pog P1 --w-sales 0 --w-units 1 --scenario " +
                    (kData / "golden/scenario.json").string() + " --items " +
                    (kData / "golden/items.csv").string());
  CHECK(r.code == 0);
  // Units weight: every item is worth its demand (2 each); capacity 4 fits B + A or B + C.
  CHECK(r.out.find("4,4,") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  CHECK(run("bays --problem " + (kData / "bad/infeasible_problem.json").string()).code == 2);
  const Run infeasible = run("bays --problem " + (kData / "bad/infeasible_problem.json").string());
  CHECK(infeasible.out.find("deficit 1") != std::string::npos);
  const Run bad = run("validate --scenario " + (kData / "golden/scenario.json").string() +
                      " --items " + (kData / "bad/negative_demand.csv").string());
  CHECK(bad.code == 1);
  CHECK(bad.out.find("negative_demand.csv:3") != std::string::npos);
  CHECK(run("bogus").code == 1);
  CHECK(run("validate --scenario " + (kData / "golden/scenario.json").string() + " --items " +
            (kData / "golden/items.csv").string())
            .code == 0);
}

TEST_CASE("cli bays, emit-lp and summarize") {
  const Run bays = run("bays --method greedy --problem " + (kData / "golden/problem.json").string());
  CHECK(bays.code == 0);
  CHECK(bays.out.find("objective 25") != std::string::npos);

  const Run lp = run("emit-lp --problem " + (kData / "golden/problem.json").string());
  CHECK(lp.code == 0);
  CHECK(lp.out.find("Generals") != std::string::npos);

  const fs::path dir = temp_dir("summarize");
  const double lifts[] = {10, 12, 14};
  for (int i = 0; i < 3; ++i) {
    shelfopt::PlanReport r;
    r.department_id = "d" + std::to_string(i);
    r.lift.sales = lifts[i];
    r.lift.margin = lifts[i] / 2;
    std::ofstream(dir / ("r" + std::to_string(i) + ".json")) << shelfopt::report_to_json(r);
  }
  const Run sum = run("summarize " + dir.string());
  CHECK(sum.code == 0);
  CHECK(sum.out.find("12.00 ± 2.00") != std::string::npos);
}
