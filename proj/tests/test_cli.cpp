#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#ifndef CKDUAL_CLI
#error "CKDUAL_CLI must point at the command-line binary"
#endif
#ifndef CKDUAL_DATA
#error "CKDUAL_DATA must point at the sample matrices"
#endif

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CKDUAL_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return Run{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const char* name) { return std::string(CKDUAL_DATA) + "/" + name; }

} // namespace

TEST_CASE("exit codes") {
  CHECK(run("validate --matrix " + data("fibonacci.json")).code == 0);
  CHECK(run("validate --matrix " + data("flip.json")).code == 0);
  CHECK(run("validate --matrix " + data("broken.json")).code == 2);
  CHECK(run("validate --matrix " + data("trailing.json")).code == 2);
  CHECK(run("validate --matrix " + data("zero_row.json")).code == 2);
  CHECK(run("validate --matrix " + data("missing.json")).code == 2);
  CHECK(run("validate").code == 2);
  CHECK(run("frobnicate --matrix " + data("fibonacci.json")).code == 2);

  CHECK(run("ktheory --matrix " + data("full3.json")).code == 0);
  CHECK(run("duality --matrix " + data("three.txt")).code == 0);
  CHECK(run("words --matrix " + data("fibonacci.json") + " --length 4").code == 0);

  CHECK(run("fock-verify --matrix " + data("full2.txt")).code == 0);
  CHECK(run("fock-verify --matrix " + data("fibonacci.json")).code == 1);
  CHECK(run("fock-verify --matrix " + data("fibonacci.json") + " --relation i").code == 0);
  CHECK(run("fock-verify --matrix " + data("fibonacci.json") + " --relation v").code == 2);
  CHECK(run("fock-verify --matrix " + data("fibonacci.json") + " --max-length 1").code == 2);

  CHECK(run("lemma-verify --matrix " + data("full2.txt") + " --which W").code == 0);
  CHECK(run("lemma-verify --matrix " + data("full2.txt") + " --which V").code == 0);
  CHECK(run("lemma-verify --matrix " + data("full2.txt") + " --which toeplitz").code == 0);
  CHECK(run("lemma-verify --matrix " + data("fibonacci.json") + " --which W").code == 1);
  CHECK(run("lemma-verify --matrix " + data("fibonacci.json") + " --which V").code == 0);
  CHECK(run("lemma-verify --matrix " + data("fibonacci.json") + " --which X").code == 2);

  CHECK(run("pairing --matrix " + data("three.txt")).code == 0);
}

TEST_CASE("output is deterministic and JSON round-trips") {
  for (const std::string cmd :
       {"validate --json --matrix " + data("flip.json"), "words --json --length 3 --matrix " + data("three.txt"),
        "ktheory --json --matrix " + data("full3.json"), "duality --json --matrix " + data("fibonacci.json"),
        "fock-verify --json --matrix " + data("fibonacci.json"),
        "lemma-verify --json --which W --matrix " + data("three.txt"),
        "lemma-verify --json --which toeplitz --matrix " + data("fibonacci.json"),
        "pairing --json --matrix " + data("fibonacci.json")}) {
    const Run first = run(cmd);
    const Run second = run(cmd);
    CHECK(first.out == second.out);
    CHECK_FALSE(first.out.empty());
    const auto j = nlohmann::json::parse(first.out);
    CHECK(j.dump(2) + "\n" == first.out);
  }
  CHECK(run("fock-verify --matrix " + data("fibonacci.json")).out ==
        run("fock-verify --matrix " + data("fibonacci.json")).out);
}

TEST_CASE("reported content") {
  const auto k = nlohmann::json::parse(run("ktheory --json --matrix " + data("full3.json")).out);
  CHECK(k.at("O_A").at("K0") == nlohmann::json{{"free_rank", 0}, {"torsion", {2}}});
  CHECK(k.at("O_A").at("K1") == nlohmann::json{{"free_rank", 0}, {"torsion", nlohmann::json::array()}});

  const auto f = nlohmann::json::parse(run("fock-verify --json --relation iv --matrix " + data("fibonacci.json")).out);
  bool found = false;
  for (const auto& r : f.at("reports"))
    if (r.at("k") == 2 && r.at("l") == 2) {
      found = true;
      CHECK(r.at("defects") ==
            nlohmann::json::parse(R"([{"column":"2","column_length":1,"delta":{"2":-1}}])"));
    }
  CHECK(found);

  const auto l = nlohmann::json::parse(run("lemma-verify --json --which W --matrix " + data("fibonacci.json")).out);
  CHECK(l.at("lemma") == "W");
  CHECK(l.at("m_max") == 5);
  CHECK(l.at("items").at(5).at("defects").at(0).at("ck_term") == "s[2]");

  const auto v = run("validate --matrix " + data("flip.json")).out;
  CHECK(v.find("cantor: false") != std::string::npos);
  CHECK(v.find("warning") != std::string::npos);
}
