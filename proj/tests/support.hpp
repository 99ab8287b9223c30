#pragma once

// Shared helpers for the test programs: seeded random inputs and a few
// brute-force oracles that do not go through the code under test.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "ckdual/ckalg.hpp"
#include "ckdual/fock.hpp"
#include "ckdual/sft.hpp"
#include "ckdual/zlinalg.hpp"

namespace testsupport {

using namespace ckdual;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed'c0de'2026ULL);
  return gen;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline sft::ZeroOneMatrix matrix(const std::vector<std::vector<long long>>& rows) {
  return sft::validate_matrix(rows);
}

inline sft::ZeroOneMatrix all_ones(int n) {
  return sft::validate_matrix(std::vector<std::vector<long long>>(n, std::vector<long long>(n, 1)));
}

inline sft::ZeroOneMatrix fibonacci() { return matrix({{1, 1}, {1, 0}}); }

// Random 0/1 matrix without zero rows or columns.
inline sft::ZeroOneMatrix random_valid(int n, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  for (;;) {
    std::vector<std::vector<long long>> raw(n, std::vector<long long>(n));
    for (auto& row : raw)
      for (auto& x : row) x = bit(rng()) ? 1 : 0;
    try {
      return sft::validate_matrix(raw);
    } catch (const Error&) {
    }
  }
}

// Aperiodic by the power criterion: some A^k with k <= n^2 - 2n + 2 is
// entrywise positive (Wielandt).
inline bool primitive_by_powers(const sft::ZeroOneMatrix& a) {
  const int n = a.size();
  std::vector<std::vector<int>> p(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p[i][j] = a.at(i, j);
  const int bound = n * n - 2 * n + 2;
  for (int k = 1; k <= bound; ++k) {
    bool positive = true;
    for (int i = 0; i < n && positive; ++i)
      for (int j = 0; j < n; ++j) positive = positive && p[i][j] > 0;
    if (positive) return true;
    std::vector<std::vector<int>> q(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l)
        if (p[i][l])
          for (int j = 0; j < n; ++j) q[i][j] = q[i][j] || (a(l, j) ? 1 : 0);
    p = std::move(q);
  }
  return false;
}

inline sft::ZeroOneMatrix random_aperiodic(int n) {
  for (;;) {
    auto a = random_valid(n, 0.45);
    if (primitive_by_powers(a)) return a;
  }
}

// Every valid 0/1 matrix of size n; meant for n <= 4.
inline std::vector<sft::ZeroOneMatrix> all_valid(int n) {
  std::vector<sft::ZeroOneMatrix> out;
  for (std::uint32_t bits = 0; bits < (1u << (n * n)); ++bits) {
    std::vector<std::vector<long long>> raw(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) raw[i][j] = (bits >> (i * n + j)) & 1u;
    try {
      out.push_back(sft::validate_matrix(raw));
    } catch (const Error&) {
    }
  }
  return out;
}

inline sft::Word random_word(const sft::ZeroOneMatrix& a, int len) {
  sft::Word w;
  while (static_cast<int>(w.size()) < len) {
    std::vector<int> next;
    for (int k = 0; k < a.size(); ++k)
      if (w.empty() || a(w.back(), k)) next.push_back(k);
    w.push_back(next[static_cast<std::size_t>(uniform(0, static_cast<int>(next.size()) - 1))]);
  }
  return w;
}

inline ckalg::CKElement random_element(const ckalg::AlgebraPtr& alg, int terms, int max_len) {
  auto x = ckalg::CKElement::zero(alg);
  for (int t = 0; t < terms; ++t) {
    const auto mu = random_word(alg->matrix, uniform(0, max_len));
    const auto nu = random_word(alg->matrix, uniform(0, max_len));
    x.add_term(ckalg::CKKey{mu, nu}, ckalg::Rational(uniform(-3, 3)));
  }
  return x;
}

// Words of length exactly `len`, enumerated by brute force over all strings.
inline std::vector<sft::Word> brute_words(const sft::ZeroOneMatrix& a, int len) {
  const int n = a.size();
  std::vector<sft::Word> out;
  sft::Word w(static_cast<std::size_t>(len), 0);
  for (;;) {
    bool ok = true;
    for (int i = 0; i + 1 < len; ++i) ok = ok && a(w[i], w[i + 1]);
    if (ok) out.push_back(w);
    int pos = len - 1;
    while (pos >= 0 && w[pos] == n - 1) w[pos--] = 0;
    if (pos < 0) break;
    ++w[pos];
  }
  return out;
}

// At most `cap` words of length `len`: all of them when few enough, else a
// random admissible sample.
inline std::vector<sft::Word> probe_words(const sft::ZeroOneMatrix& a, int len, std::size_t cap = 256) {
  if (sft::count_words(a, len) <= static_cast<long>(cap)) return brute_words(a, len);
  std::vector<sft::Word> out;
  for (std::size_t i = 0; i < cap; ++i) out.push_back(random_word(a, len));
  return out;
}

inline fock::FockVector basis_vector(const sft::Word& w) { return fock::FockVector{{w, ckalg::Rational(1)}}; }

// Evaluation of x on every basis vector of the given length.
inline std::vector<fock::FockVector> action_on(const ckalg::CKElement& x, const std::vector<sft::Word>& probes) {
  std::vector<fock::FockVector> out;
  for (const auto& w : probes) out.push_back(fock::evaluate(x, basis_vector(w)));
  return out;
}

// Probe length for checking x*y against composition: deep enough that
// neither factor reaches the vacuum.
inline int probe_length(const ckalg::CKElement& x, const ckalg::CKElement& y) {
  return 2 * static_cast<int>(std::max(x.max_word_length(), y.max_word_length())) + 2;
}

// Two elements agree in the algebra iff they agree on every word longer than
// all their terms: there each term leaves a nonempty tail, so agreement on
// longer words follows by appending letters.
inline bool oracle_equal(const ckalg::CKElement& x, const ckalg::CKElement& y) {
  const int depth = static_cast<int>(std::max(x.max_word_length(), y.max_word_length())) + 1;
  const auto probes = brute_words(x.algebra()->matrix, depth);
  return action_on(x, probes) == action_on(y, probes);
}

} // namespace testsupport
