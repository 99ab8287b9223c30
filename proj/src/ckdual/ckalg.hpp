#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "ckdual/sft.hpp"

namespace ckdual::ckalg {

using Rational = mpq_class;
using sft::Word;

enum class AlgebraTag { A, AT };

// Generator/relation data of O_A (generators s_i) or O_{A^T} (generators t_i).
// `matrix` is the matrix that governs admissibility of words in this
// algebra, i.e. A^T for the t-algebra.
struct CKAlgebra {
  AlgebraTag tag;
  sft::ZeroOneMatrix matrix;
  char symbol;

  int size() const { return matrix.size(); }
  bool operator==(const CKAlgebra& o) const { return tag == o.tag && matrix == o.matrix; }
};

using AlgebraPtr = std::shared_ptr<const CKAlgebra>;

// O_A for tag A, O_{A^T} for tag AT (the transpose is taken here).
AlgebraPtr make_algebra(const sft::ZeroOneMatrix& a, AlgebraTag tag);

// s_mu s_nu^*. Ordered by degree |mu|-|nu|, then mu, then nu.
struct CKKey {
  Word mu;
  Word nu;

  int degree() const { return static_cast<int>(mu.size()) - static_cast<int>(nu.size()); }
  bool operator==(const CKKey&) const = default;
};

bool operator<(const CKKey& a, const CKKey& b);

using KeyCoeffs = std::vector<std::pair<CKKey, Rational>>;

// True when s_mu s_nu^* vanishes in the algebra: both words nonempty and
// their last letters share no successor.
bool is_zero_term(const sft::ZeroOneMatrix& a, const CKKey& key);

// (s_mu s_nu^*)(s_alpha s_beta^*) in normal form; zero terms are dropped.
KeyCoeffs multiply_terms(const sft::ZeroOneMatrix& a, const CKKey& x, const CKKey& y);

// s_mu s_nu^* = sum_k A(mu_last,k) A(nu_last,k) s_{mu k} s_{nu k}^*, with an
// empty word allowing every k.
std::vector<CKKey> expand_term(const sft::ZeroOneMatrix& a, const CKKey& key);

// Finite linear combination of normal-form terms s_mu s_nu^*.
class CKElement {
public:
  using Terms = std::map<CKKey, Rational>;

  explicit CKElement(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

  static CKElement zero(AlgebraPtr algebra) { return CKElement(std::move(algebra)); }
  static CKElement unit(AlgebraPtr algebra);
  // s_k (0-based k).
  static CKElement generator(AlgebraPtr algebra, int k);
  static CKElement term(AlgebraPtr algebra, Word mu, Word nu, Rational coeff = 1);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t max_word_length() const;

  void add_term(const CKKey& key, const Rational& coeff);

  CKElement& operator+=(const CKElement& o);
  CKElement& operator-=(const CKElement& o);
  CKElement& operator*=(const Rational& c);

  friend CKElement operator+(CKElement a, const CKElement& b) { return a += b; }
  friend CKElement operator-(CKElement a, const CKElement& b) { return a -= b; }
  friend CKElement operator*(CKElement a, const Rational& c) { return a *= c; }
  friend CKElement operator*(const Rational& c, CKElement a) { return a *= c; }
  friend CKElement operator*(const CKElement& x, const CKElement& y);

  // Same stored terms; semantic equality is ck_equal.
  bool same_terms(const CKElement& o) const { return *algebra_ == *o.algebra_ && terms_ == o.terms_; }

  // Every term rewritten until min(|mu|,|nu|) >= level.
  CKElement expanded_to(std::size_t level) const;

  std::string render() const;

private:
  AlgebraPtr algebra_;
  Terms terms_;
};

CKElement ck_multiply(const CKElement& x, const CKElement& y);
CKElement ck_adjoint(const CKElement& x);

// Expands x - y until every term has min(|mu|,|nu|) >= level and tests all
// coefficients zero. Throws LevelTooSmall if level is below the longest word.
bool ck_equal(const CKElement& x, const CKElement& y, std::size_t level);
// ck_equal at the smallest admissible level.
bool ck_equal(const CKElement& x, const CKElement& y);

std::string render_key(const CKKey& key, char symbol, int n);

// ---------------------------------------------------------------------------
// Tensor products of CK algebras and the circle.

// Trigonometric polynomial sum_d c_d z^d.
struct Laurent {
  std::map<int, Rational> coeffs;

  static Laurent monomial(int degree, Rational c = 1) {
    Laurent l;
    l.coeffs[degree] = std::move(c);
    return l;
  }
};

struct CircleFactor {
  bool operator==(const CircleFactor&) const = default;
};

// A tensor factor is either a CK algebra or the circle C(S^1).
using FactorSpec = std::variant<AlgebraPtr, CircleFactor>;
using Signature = std::vector<FactorSpec>;

bool same_signature(const Signature& a, const Signature& b);

// One factor of an elementary tensor: a CK key, or z^degree for the circle.
struct FactorTerm {
  CKKey key;
  int degree = 0;
  bool operator==(const FactorTerm&) const = default;
};

bool operator<(const FactorTerm& a, const FactorTerm& b);

using TensorKey = std::vector<FactorTerm>;

class TensorElement {
public:
  using Part = std::variant<CKElement, Laurent>;
  using Terms = std::map<TensorKey, Rational>;

  explicit TensorElement(Signature signature) : signature_(std::move(signature)) {}

  // Multilinear expansion of part_1 (x) part_2 (x) ...
  static TensorElement tensor(const std::vector<Part>& parts);

  const Signature& signature() const { return signature_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const TensorKey& key, const Rational& coeff);

  TensorElement& operator+=(const TensorElement& o);
  TensorElement& operator-=(const TensorElement& o);
  TensorElement& operator*=(const Rational& c);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(const TensorElement& x, const TensorElement& y);

  bool same_terms(const TensorElement& o) const {
    return same_signature(signature_, o.signature_) && terms_ == o.terms_;
  }

  // Every CK factor expanded to min(|mu|,|nu|) >= that factor's largest word
  // length; the result is a canonical form for equality.
  TensorElement expanded() const;

  std::string render() const;

private:
  Signature signature_;
  Terms terms_;
};

TensorElement tensor_multiply(const TensorElement& x, const TensorElement& y);
TensorElement tensor_adjoint(const TensorElement& x);
bool tensor_equal(const TensorElement& x, const TensorElement& y);

// w = sum_i s_i^* (x) t_i in O_A (x) O_{A^T}.
TensorElement w_element(const sft::ZeroOneMatrix& a);

// sum_{i,j} A_ij s_j s_j^* (x) t_i t_i^*.
TensorElement w_range_projection(const sft::ZeroOneMatrix& a);

// Gauge twist on O_A (x) C(S^1): s_mu s_nu^* (x) z^d -> s_mu s_nu^* (x) z^{d+|mu|-|nu|}.
TensorElement theta(const TensorElement& x);

// Evaluation at z = 1: O_A (x) C(S^1) -> O_A.
CKElement forget_grading(const TensorElement& x);

// Generators of O_A (x) C(S^1) on which alpha_bar is defined.
struct CircleGenerator {
  enum class Kind { Z, S } kind;
  int k = 0;  // 0-based, used for Kind::S

  static CircleGenerator z() { return {Kind::Z, 0}; }
  static CircleGenerator s(int k) { return {Kind::S, k}; }
};

// alpha_bar(1 (x) z)   = sum_i 1 (x) t_i (x) s_i^*
// alpha_bar(s_k (x) 1) = alpha_bar(1 (x) z)^* (s_k (x) 1 (x) 1)
// in O_A (x) O_{A^T} (x) O_A.
TensorElement alpha_bar(const sft::ZeroOneMatrix& a, CircleGenerator g);

// Same map, recognising 1 (x) z or s_k (x) 1 given as an element of
// O_A (x) C(S^1). Throws UnsupportedGenerator otherwise.
TensorElement alpha_bar(const TensorElement& g);

// Signature helpers.
Signature signature_A_circle(const sft::ZeroOneMatrix& a);
Signature signature_A_AT(const sft::ZeroOneMatrix& a);
Signature signature_A_AT_A(const sft::ZeroOneMatrix& a);

} // namespace ckdual::ckalg
