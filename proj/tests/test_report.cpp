#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ckdual/report.hpp"
#include "support.hpp"

using namespace ckdual;
using namespace ckdual::report;
using namespace testsupport;

namespace {

template <class T>
void round_trips(const T& value) {
  const json j = value;
  const T back = json::parse(j.dump()).get<T>();
  CHECK(back == value);
  CHECK(json(back).dump() == j.dump());
}

} // namespace

TEST_CASE("reports round-trip through JSON") {
  for (const auto& a : {fibonacci(), all_ones(3), matrix({{0, 1}, {1, 0}}), matrix({{1, 1, 0}, {0, 0, 1}, {1, 1, 1}})}) {
    round_trips(make_validate(a));
    round_trips(make_words(a, 3));
    round_trips(make_ktheory(a));
    round_trips(ktheory::duality_report(a));
    round_trips(make_fock(a, 4, "all"));
    round_trips(make_pairing(a, 4));
    const auto b = fock::make_basis(a, 4);
    round_trips(duality::verify_lemma_W(b));
    round_trips(duality::verify_lemma_V(b));
    round_trips(duality::verify_toeplitz_untwist(b));
  }
}

TEST_CASE("field names") {
  const json k = make_ktheory(all_ones(3));
  CHECK(k.at("O_A").at("K0") == json{{"free_rank", 0}, {"torsion", {2}}});
  for (const char* key : {"K0", "K1", "K^0", "K^1"}) CHECK(k.at("O_AT").contains(key));
  CHECK(k.at("matrix") == json{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  CHECK(k.contains("duality"));

  const json f = make_fock(fibonacci(), 5, "iv");
  const auto& defect = f.at("reports").at(3);
  CHECK(defect.at("relation") == "iv");
  CHECK(defect.at("holds") == false);
  CHECK(defect.at("defects").at(0).at("column") == "2");
  CHECK(defect.at("defects").at(0).at("delta") == json{{"2", -1}});

  const json l = duality::verify_lemma_W(fock::make_basis(fibonacci(), 5));
  CHECK(l.at("lemma") == "W");
  CHECK(l.at("m_max") == 5);
  CHECK(l.at("items").at(2).at("id") == "iii");
  CHECK(l.at("items").at(2).at("holds") == true);
}

TEST_CASE("big invariant factors are written as strings") {
  zlinalg::FGAbelianGroup g{0, {mpz_class("123456789012345678901234567890")}};
  const json j = g;
  CHECK(j.at("torsion").at(0).is_string());
  CHECK(j.get<zlinalg::FGAbelianGroup>() == g);
}

TEST_CASE("text rendering") {
  CHECK(render_text(make_validate(fibonacci())).find("cantor: true") != std::string::npos);
  CHECK(render_text(make_ktheory(all_ones(3))).find("K0  = Z/2") != std::string::npos);
  CHECK(render_text(make_words(fibonacci(), 2)).find("words of length 2: 3") != std::string::npos);
  CHECK(render_text(make_pairing(fibonacci(), 3)).find("X Ω = 2 Ω") != std::string::npos);
  CHECK(dump(json{{"a", 1}}).back() == '\n');
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(make_fock(fibonacci(), 1, "all"), Error);
  CHECK_THROWS_AS(make_pairing(fibonacci(), 1), Error);
  CHECK_THROWS_AS(make_words(fibonacci(), -1), Error);
  CHECK_THROWS_AS(json(json{{1, 2}, {1, 0}}).get<sft::ZeroOneMatrix>(), Error);
}
