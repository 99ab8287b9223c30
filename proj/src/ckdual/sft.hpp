#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "ckdual/error.hpp"

namespace ckdual::sft {

// Letters are 0-based internally; every textual rendering is 1-based.
using Letter = int;
using Word = std::vector<Letter>;

// Square 0/1 transition matrix with no zero row and no zero column.
// Instances can only be obtained through validate_matrix, so the invariants
// always hold.
class ZeroOneMatrix {
public:
  int size() const noexcept { return n_; }
  bool operator()(int i, int j) const { return bits_[static_cast<std::size_t>(i * n_ + j)] != 0; }
  int at(int i, int j) const { return (*this)(i, j) ? 1 : 0; }
  std::vector<std::vector<int>> rows() const;

  bool operator==(const ZeroOneMatrix&) const = default;

private:
  friend ZeroOneMatrix validate_matrix(const std::vector<std::vector<long long>>& raw);
  int n_ = 0;
  std::vector<std::uint8_t> bits_;
};

ZeroOneMatrix validate_matrix(const std::vector<std::vector<long long>>& raw);

ZeroOneMatrix transpose(const ZeroOneMatrix& a);

// Strongly connected transition graph.
bool is_irreducible(const ZeroOneMatrix& a);

bool is_aperiodic(const ZeroOneMatrix& a);

// Surrogate for "the shift space is a Cantor set": irreducible and not a
// permutation matrix. Reducible matrices are reported as false.
bool satisfies_cantor_condition(const ZeroOneMatrix& a);

bool is_permutation_matrix(const ZeroOneMatrix& a);

bool is_admissible(const ZeroOneMatrix& a, const Word& w);

// All admissible words of length exactly m, lexicographic.
std::vector<Word> enumerate_words(const ZeroOneMatrix& a, int m);

mpz_class count_words(const ZeroOneMatrix& a, int m);

// "12" for n < 10, "1,12" otherwise; empty word renders as "".
std::string word_to_string(const Word& w, int n);

// Matrix file parsing. JSON: {"n": <int>, "rows": [[...], ...]}; text: n
// lines of n whitespace separated integers. Both reject trailing garbage and
// report malformed input as ErrorKind::ParseError; 0/1 and zero-line checks
// are the job of validate_matrix.
std::vector<std::vector<long long>> parse_matrix_json(std::string_view text);
std::vector<std::vector<long long>> parse_matrix_text(std::string_view text);

// Chooses the format from the first non-blank character ('{' means JSON).
ZeroOneMatrix parse_matrix(std::string_view text);
ZeroOneMatrix load_matrix_file(const std::string& path);

} // namespace ckdual::sft
