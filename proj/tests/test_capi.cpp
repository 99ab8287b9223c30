#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include <json.hpp>

#include "ckdual/ckdual.h"

namespace {

struct Output {
  ckd_status status;
  std::string text;
  int all_hold;
};

template <class F>
Output call(F&& f) {
  char* out = nullptr;
  int ok = -1;
  Output r{f(&out, &ok), "", ok};
  if (out) {
    r.text = out;
    ckd_string_free(out);
  }
  return r;
}

} // namespace

TEST_CASE("matrix handles") {
  const long long fib[] = {1, 1, 1, 0};
  ckd_matrix* m = nullptr;
  REQUIRE(ckd_matrix_from_rows(fib, 2, &m) == CKD_OK);
  CHECK(ckd_matrix_size(m) == 2);
  CHECK(ckd_matrix_entry(m, 1, 1) == 0);
  CHECK(ckd_matrix_entry(m, 2, 0) == -1);
  ckd_matrix_free(m);

  const long long zero_col[] = {1, 0, 1, 0};
  CHECK(ckd_matrix_from_rows(zero_col, 2, &m) == CKD_INPUT_ERROR);
  CHECK(ckd_last_error_kind() == CKD_ERR_ZERO_COLUMN);
  CHECK(ckd_last_error_index() == 2);
  CHECK(std::string(ckd_last_error()).find("column") != std::string::npos);

  CHECK(ckd_matrix_parse("1 1\n1 0 x", &m) == CKD_INPUT_ERROR);
  CHECK(ckd_last_error_kind() == CKD_ERR_PARSE);
  CHECK(ckd_matrix_load("/nonexistent", &m) == CKD_INPUT_ERROR);
  CHECK(ckd_matrix_parse(nullptr, &m) == CKD_INPUT_ERROR);
  ckd_matrix_free(nullptr);
}

TEST_CASE("report producers") {
  ckd_matrix* fib = nullptr;
  ckd_matrix* full = nullptr;
  REQUIRE(ckd_matrix_parse("{\"n\": 2, \"rows\": [[1, 1], [1, 0]]}", &fib) == CKD_OK);
  REQUIRE(ckd_matrix_parse("1 1\n1 1\n", &full) == CKD_OK);

  auto r = call([&](char** o, int* ok) { return ckd_fock_verify(fib, 5, "all", CKD_FORMAT_JSON, o, ok); });
  CHECK(r.status == CKD_OK);
  CHECK(r.all_hold == 0);
  CHECK(nlohmann::json::parse(r.text).at("holds") == false);

  r = call([&](char** o, int* ok) { return ckd_fock_verify(full, 5, "all", CKD_FORMAT_TEXT, o, ok); });
  CHECK(r.all_hold == 1);

  r = call([&](char** o, int* ok) { return ckd_lemma_verify(fib, 5, "W", CKD_FORMAT_JSON, o, ok); });
  CHECK(r.all_hold == 0);
  r = call([&](char** o, int* ok) { return ckd_lemma_verify(full, 5, "V", CKD_FORMAT_JSON, o, ok); });
  CHECK(r.all_hold == 1);
  r = call([&](char** o, int* ok) { return ckd_lemma_verify(full, 5, "Q", CKD_FORMAT_JSON, o, ok); });
  CHECK(r.status == CKD_INPUT_ERROR);
  CHECK(r.text.empty());
  r = call([&](char** o, int* ok) { return ckd_fock_verify(full, 1, "all", CKD_FORMAT_JSON, o, ok); });
  CHECK(r.status == CKD_INPUT_ERROR);
  r = call([&](char** o, int* ok) { return ckd_fock_verify(full, 3, "v", CKD_FORMAT_JSON, o, ok); });
  CHECK(r.status == CKD_INPUT_ERROR);

  r = call([&](char** o, int* ok) { return ckd_ktheory(full, CKD_FORMAT_JSON, o, ok); });
  CHECK(r.all_hold == 1);
  CHECK(nlohmann::json::parse(r.text).at("O_A").at("K0").at("torsion").empty());
  r = call([&](char** o, int* ok) { return ckd_duality(fib, CKD_FORMAT_TEXT, o, ok); });
  CHECK(r.all_hold == 1);
  r = call([&](char** o, int* ok) { return ckd_pairing(fib, 4, CKD_FORMAT_JSON, o, ok); });
  CHECK(r.all_hold == 1);
  r = call([&](char** o, int* ok) { return ckd_words(fib, 2, CKD_FORMAT_JSON, o, ok); });
  CHECK(nlohmann::json::parse(r.text).at("count") == "3");
  r = call([&](char** o, int* ok) { return ckd_validate(fib, CKD_FORMAT_JSON, o, ok); });
  CHECK(nlohmann::json::parse(r.text).at("cantor") == true);
  r = call([&](char** o, int* ok) { return ckd_validate(nullptr, CKD_FORMAT_JSON, o, ok); });
  CHECK(r.status == CKD_INPUT_ERROR);

  ckd_matrix_free(fib);
  ckd_matrix_free(full);
}
