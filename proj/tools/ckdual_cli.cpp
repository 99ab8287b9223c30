// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "ckdual/ckdual.h"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitDefects = 1;
constexpr int kExitInput = 2;

struct MatrixDeleter {
  void operator()(ckd_matrix* m) const { ckd_matrix_free(m); }
};
using MatrixHandle = std::unique_ptr<ckd_matrix, MatrixDeleter>;

struct Options {
  std::string matrix;
  int max_length = 5;
  bool json = false;
  std::string relation = "all";
  std::string which = "W";
  int length = 3;
};

int report_error(ckd_status s) {
  std::cerr << "error: " << ckd_last_error() << "\n";
  return s == CKD_INPUT_ERROR ? kExitInput : 3;
}

// Loads the matrix, runs `produce`, prints its output and maps the outcome to
// the exit code.
template <class F>
int run(const Options& opt, F&& produce) {
  ckd_matrix* raw = nullptr;
  if (ckd_status s = ckd_matrix_load(opt.matrix.c_str(), &raw); s != CKD_OK) return report_error(s);
  MatrixHandle m(raw);
  char* out = nullptr;
  int all_hold = 0;
  const ckd_format fmt = opt.json ? CKD_FORMAT_JSON : CKD_FORMAT_TEXT;
  if (ckd_status s = produce(m.get(), fmt, &out, &all_hold); s != CKD_OK) return report_error(s);
  std::fputs(out, stdout);
  ckd_string_free(out);
  return all_hold ? kExitClean : kExitDefects;
}

void add_common(CLI::App* cmd, Options& opt, bool truncated) {
  cmd->add_option("--matrix", opt.matrix, "matrix file (JSON or plain text)")->required();
  cmd->add_flag("--json", opt.json, "print JSON instead of text");
  if (truncated)
    cmd->add_option("--max-length", opt.max_length, "longest Fock word kept (at least 2)")
        ->default_val(5)
        ->check(CLI::Range(2, 1 << 20));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cuntz-Krieger algebra K-theory and Fock space identity checker"};
  app.require_subcommand(1);
  Options opt;

  auto* validate = app.add_subcommand("validate", "check the matrix and report aperiodicity and the Cantor condition");
  add_common(validate, opt, false);

  auto* words = app.add_subcommand("words", "list admissible words of a given length");
  add_common(words, opt, false);
  words->add_option("--length", opt.length, "word length")->default_val(3)->check(CLI::NonNegativeNumber);

  auto* ktheory = app.add_subcommand("ktheory", "K-theory and K-homology of O_A and O_AT");
  add_common(ktheory, opt, false);

  auto* duality = app.add_subcommand("duality", "compare the presentations across the duality square");
  add_common(duality, opt, false);

  auto* fock = app.add_subcommand("fock-verify", "check the creation operator relations on the truncated Fock space");
  add_common(fock, opt, true);
  fock->add_option("--relation", opt.relation, "relation to check")
      ->default_val("all")
      ->check(CLI::IsMember({"i", "ii", "iii", "iv", "all"}));

  auto* lemma = app.add_subcommand("lemma-verify", "check the W, V or Toeplitz identities in the hybrid model");
  add_common(lemma, opt, true);
  lemma->add_option("--which", opt.which, "identity family")
      ->default_val("W")
      ->check(CLI::IsMember({"W", "V", "toeplitz"}));

  auto* pairing = app.add_subcommand("pairing", "sector indices of X = sum_i L_i* R_i");
  add_common(pairing, opt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (validate->parsed())
    return run(opt, [&](ckd_matrix* m, ckd_format f, char** out, int* ok) { return ckd_validate(m, f, out, ok); });
  if (words->parsed())
    return run(opt, [&](ckd_matrix* m, ckd_format f, char** out, int* ok) {
      return ckd_words(m, opt.length, f, out, ok);
    });
  if (ktheory->parsed())
    return run(opt, [&](ckd_matrix* m, ckd_format f, char** out, int* ok) { return ckd_ktheory(m, f, out, ok); });
  if (duality->parsed())
    return run(opt, [&](ckd_matrix* m, ckd_format f, char** out, int* ok) { return ckd_duality(m, f, out, ok); });
  if (fock->parsed())
    return run(opt, [&](ckd_matrix* m, ckd_format f, char** out, int* ok) {
      return ckd_fock_verify(m, opt.max_length, opt.relation.c_str(), f, out, ok);
    });
  if (lemma->parsed())
    return run(opt, [&](ckd_matrix* m, ckd_format f, char** out, int* ok) {
      return ckd_lemma_verify(m, opt.max_length, opt.which.c_str(), f, out, ok);
    });
  return run(opt, [&](ckd_matrix* m, ckd_format f, char** out, int* ok) {
    return ckd_pairing(m, opt.max_length, f, out, ok);
  });
}
