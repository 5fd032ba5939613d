#include "qforms/serialize.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(QFORMS_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

// structural schema validation shared by all report kinds
void validate_report(const qf::Json& j) {
  REQUIRE(j.is_object());
  CHECK(j.at("schema") == 1);
  if (j.contains("error")) {
    CHECK(j.at("error").contains("type"));
    CHECK(j.at("error").contains("message"));
    return;
  }
  REQUIRE(j.contains("subcommand"));
  std::string sub = j.at("subcommand");
  if (sub == "analyze") {
    const auto& inv = j.at("invariants");
    for (const char* key :
         {"dimension", "radical_dimension", "det", "disc", "signature", "hasse_minus_one"})
      CHECK(inv.contains(key));
  } else if (sub == "isotropy") {
    CHECK(j.at("isotropic").is_boolean());
    CHECK(j.contains("witness"));
  } else if (sub == "witt") {
    CHECK(j.at("witt_index").is_number_integer());
    CHECK(j.contains("anisotropic_part"));
  } else if (sub == "i1") {
    CHECK(j.at("i1").contains("determined"));
    CHECK(j.at("i1").contains("value"));
    CHECK(j.at("i1").at("justification").is_array());
  } else if (sub == "ruled" || sub == "sphere-ruled") {
    CHECK(j.at("verdict").is_string());
    CHECK(j.at("trace").is_array());
    CHECK(j.contains("certificate"));
  } else if (sub == "aut") {
    CHECK(j.at("verdict").is_string());
    CHECK(j.contains("named_group"));
    CHECK(j.contains("family"));
  } else if (sub == "verify") {
    CHECK(j.at("checks").is_array());
    CHECK(j.at("all_pass").is_boolean());
  }
}

}  // namespace

TEST_CASE("cli golden examples") {
  RunResult r1 = run_cli("i1 --field R --diag 1,1,1,1,1");
  CHECK(r1.exit_code == 0);
  CHECK(r1.output.find("i1 = 1") != std::string::npos);

  RunResult r2 = run_cli("aut --field R --poly \"x0^2+x1^2+x2^2-1\"");
  CHECK(r2.exit_code == 0);
  CHECK(r2.output.find("PGO_W_in_V") != std::string::npos);
  CHECK(r2.output.find("O(3)") != std::string::npos);

  RunResult r3 = run_cli("ruled --field Q --diag 1,1,1,7");
  CHECK(r3.exit_code == 0);
  CHECK(r3.output.find("NotRuled") != std::string::npos);

  RunResult r4 = run_cli("ruled --field Q --diag 1,1,1,7 --json");
  qf::Json j = qf::Json::parse(r4.output);
  validate_report(j);
  CHECK(j.at("i1").at("value") == 1);
}

TEST_CASE("cli determinism: byte-identical repeated runs") {
  for (const char* args :
       {"ruled --diag 1,1,1,1,1,1 --json", "analyze --diag 1,-2,7/3 --json",
        "aut --poly \"x1*x2+x3^2-1\" --json", "sphere-ruled 6 --json",
        "pfister hopf --fold 2 --json", "map --fold 2 --p1-dim 3 --r 2 --json"}) {
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.output == b.output);
  }
}

TEST_CASE("cli json reports validate against the schema") {
  for (const char* args :
       {"analyze --diag 1,2,3 --json", "isotropy --diag 1,1,-2 --json",
        "witt --diag 1,-1,3 --json", "i1 --diag 1,1,1,1 --json",
        "ruled --diag 1,1,1,1,1,1,1 --json", "sphere-ruled 4 --json",
        "aut --complement --diag 1,1,1,7 --json",
        "verify --suite identities --json"}) {
    RunResult r = run_cli(args);
    CAPTURE(args);
    qf::Json j = qf::Json::parse(r.output);
    validate_report(j);
  }
}

TEST_CASE("cli exit codes") {
  // Undetermined is an answer, not a failure
  RunResult undet = run_cli("i1 --diag 1,1,1,1,1,1,1,1,1,1 --json");
  CHECK(undet.exit_code == 0);
  qf::Json j = qf::Json::parse(undet.output);
  CHECK(j.at("i1").at("determined") == false);

  // usage / parse errors exit 1
  CHECK(run_cli("i1 --diag 1,1,oops --json").exit_code == 1);
  CHECK(run_cli("analyze --poly \"2x\" --json").exit_code == 1);
  CHECK(run_cli("nonsense").exit_code != 0);
  CHECK(run_cli("analyze").exit_code == 1);  // no input source

  // resource bounds exit 2
  RunResult bound =
      run_cli("analyze --diag 184467440737095516629,1 --factor-bound 1000000 --json");
  CHECK(bound.exit_code == 2);
  qf::Json be = qf::Json::parse(bound.output);
  CHECK(be.at("error").at("type") == "BoundExceeded");

  // isotropic input to i1 is a domain error, exit 1
  CHECK(run_cli("i1 --diag 1,-1 --json").exit_code == 1);
}

TEST_CASE("cli batch mode") {
  std::string path = "/tmp/qforms_batch_test.ndjson";
  {
    std::ofstream f(path);
    f << R"({"field":"Q","diagonal":["1","1","1","1"]})" << "\n";
    f << R"({"field":"Q","diagonal":["1","1","1","7"]})" << "\n";
    f << R"({"field":"Q","diagonal":["1","1","1","1","1"]})" << "\n";
  }
  RunResult r = run_cli("ruled --batch " + path);
  CHECK(r.exit_code == 0);
  std::vector<std::string> verdicts;
  std::istringstream lines(r.output);
  std::string line;
  while (std::getline(lines, line)) {
    qf::Json j = qf::Json::parse(line);
    validate_report(j);
    verdicts.push_back(j.at("verdict"));
  }
  CHECK(verdicts == std::vector<std::string>{"Ruled", "NotRuled", "NotRuled"});

  // empty file: empty output, exit 0
  { std::ofstream f(path); }
  RunResult empty = run_cli("ruled --batch " + path);
  CHECK(empty.exit_code == 0);
  CHECK(empty.output.empty());

  // malformed middle line yields an inline error object, batch continues
  {
    std::ofstream f(path);
    f << R"({"field":"Q","diagonal":["1","1","1","1"]})" << "\n";
    f << "garbage" << "\n";
    f << R"({"field":"Q","diagonal":["1","1","1","7"]})" << "\n";
  }
  RunResult mixed = run_cli("ruled --batch " + path);
  CHECK(mixed.exit_code == 0);
  int errors = 0, fine = 0;
  std::istringstream lines2(mixed.output);
  while (std::getline(lines2, line)) {
    qf::Json j = qf::Json::parse(line);
    (j.contains("error") ? errors : fine)++;
  }
  CHECK(errors == 1);
  CHECK(fine == 2);
  std::remove(path.c_str());
}

TEST_CASE("cli --out persists reports") {
  std::string path = "/tmp/qforms_out_test.json";
  std::remove(path.c_str());
  RunResult r = run_cli("witt --diag 1,-1 --out " + path);
  CHECK(r.exit_code == 0);
  std::ifstream f(path);
  REQUIRE(f.good());
  qf::Json j;
  f >> j;
  CHECK(j.at("witt_index") == 1);
  std::remove(path.c_str());
}

TEST_CASE("cli verify suites pass") {
  CHECK(run_cli("verify --suite identities").exit_code == 0);
  CHECK(run_cli("verify --suite oracle").exit_code == 0);
  CHECK(run_cli("verify --suite bogus").exit_code == 1);
}

TEST_CASE("env factor bound override") {
  std::string cmd = "QFORMS_FACTOR_BOUND=100 " + std::string(QFORMS_CLI_PATH) +
                    " analyze --diag 101,1 --json 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(qf::Json::parse(out).at("error").at("type") == "BoundExceeded");
}
