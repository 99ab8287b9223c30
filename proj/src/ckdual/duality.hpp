#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ckdual/ckalg.hpp"
#include "ckdual/fock.hpp"

namespace ckdual::duality {

using ckalg::CKElement;
using ckalg::CKKey;
using fock::BasisPtr;
using fock::FockOperator;

// Generators of the Fock factor that the quotient map understands.
enum class FockGenerator { Identity, VacuumProjection, Left, Right };

// Formal expression recording how a hybrid element was built from
// generators. Only such elements can be pushed through the quotient map.
struct Expr {
  enum class Kind { Zero, Leaf, Sum, Difference, Product, Adjoint, Scale } kind;
  FockGenerator generator = FockGenerator::Identity;
  int index = 0;  // letter for Left/Right
  std::optional<CKElement> factor;
  long long scale = 1;
  std::shared_ptr<const Expr> lhs;
  std::shared_ptr<const Expr> rhs;
};

using ExprPtr = std::shared_ptr<const Expr>;

// Finite sum  sum_(mu,nu) X_(mu,nu) (x) s_mu s_nu^*  in E (x) O_A, with the
// E factor as exact truncated matrices and the O_A factor symbolic.
class HybridElement {
public:
  HybridElement(BasisPtr basis, ckalg::AlgebraPtr algebra);

  // op (x) c built from a named generator; keeps provenance.
  static HybridElement generator(const BasisPtr& basis, FockGenerator g, int index, const CKElement& c);
  // Arbitrary operator (x) c; no provenance.
  static HybridElement from_operator(const FockOperator& op, const CKElement& c);

  const BasisPtr& basis() const { return basis_; }
  const ckalg::AlgebraPtr& algebra() const { return algebra_; }
  const std::map<CKKey, FockOperator>& terms() const { return terms_; }
  const ExprPtr& provenance() const { return provenance_; }

  int valid_up_to() const;

  // Adds coeff * op to the coefficient of s_key (coeff must be an integer).
  void add(const CKKey& key, const FockOperator& op, const ckalg::Rational& coeff = 1);

  friend HybridElement hybrid_add(const HybridElement& x, const HybridElement& y);
  friend HybridElement hybrid_sub(const HybridElement& x, const HybridElement& y);
  friend HybridElement hybrid_mul(const HybridElement& x, const HybridElement& y);
  friend HybridElement hybrid_adjoint(const HybridElement& x);
  friend HybridElement hybrid_scale(const HybridElement& x, long long c);
  friend HybridElement hybrid_zero(const BasisPtr& basis);

private:
  void require_compatible(const HybridElement& o) const;

  BasisPtr basis_;
  ckalg::AlgebraPtr algebra_;
  std::map<CKKey, FockOperator> terms_;
  // Exactness bookkeeping for the whole element, propagated with the same
  // rules as FockOperator so cancelled terms do not widen the valid domain.
  int valid_;
  std::optional<std::pair<int, int>> shift_;
  ExprPtr provenance_;
};

HybridElement hybrid_add(const HybridElement& x, const HybridElement& y);
HybridElement hybrid_sub(const HybridElement& x, const HybridElement& y);
HybridElement hybrid_mul(const HybridElement& x, const HybridElement& y);
HybridElement hybrid_adjoint(const HybridElement& x);
HybridElement hybrid_scale(const HybridElement& x, long long c);
HybridElement hybrid_commutator(const HybridElement& x, const HybridElement& y);

inline HybridElement operator+(const HybridElement& x, const HybridElement& y) { return hybrid_add(x, y); }
inline HybridElement operator-(const HybridElement& x, const HybridElement& y) { return hybrid_sub(x, y); }
inline HybridElement operator*(const HybridElement& x, const HybridElement& y) { return hybrid_mul(x, y); }

// Zero element with full validity.
HybridElement hybrid_zero(const BasisPtr& basis);

// The quotient map E (x) O_A -> O_A (x) O_{A^T} (x) O_A applied to the
// generator expression: R_i -> 1 (x) t_i, L_i -> s_i (x) 1, P_Ω -> 0.
// Throws InvalidArgument for elements without provenance.
ckalg::TensorElement quotient(const HybridElement& x);

// W = sum_i R_i (x) s_i^*.
HybridElement build_W(const BasisPtr& basis);
// L_k (x) 1, 0-based k.
HybridElement left_generator(const BasisPtr& basis, int k);
// V_k = W^* (L_k (x) 1).
HybridElement build_V(const BasisPtr& basis, int k);

// ---------------------------------------------------------------------------

struct HybridDefect {
  int k = 0;               // 1-based generator index of the item, 0 if none
  std::string ck_term;     // rendered O_A factor
  std::string column;      // Fock column label
  int column_length = 0;
  std::map<std::string, long long> delta;
  bool operator==(const HybridDefect&) const = default;
};

struct ItemResult {
  std::string id;
  std::string statement;
  bool holds = false;
  int valid_up_to = 0;
  std::vector<HybridDefect> defects;
  // Only for items checked symbolically through the quotient map.
  std::string symbolic_residual;
  bool vacuum_adjacent = true;  // every defect column has length <= 1
  int max_defect_length = -1;
  int rank_bound = 0;           // sum of ranks of the defect coefficients
  bool operator==(const ItemResult&) const = default;
};

struct LemmaReport {
  std::string lemma;  // "W", "V" or "toeplitz"
  std::vector<std::vector<int>> matrix;
  int m_max = 0;
  std::vector<ItemResult> items;

  bool all_hold() const;
  bool operator==(const LemmaReport&) const = default;
};

// Compares lhs and rhs on the shared valid domain. The O_A factor is compared
// after expansion to a uniform level; the defects are reported in the
// coarsest equivalent form.
ItemResult compare(const std::string& id, const std::string& statement, const HybridElement& lhs,
                   const HybridElement& rhs);

LemmaReport verify_lemma_W(const BasisPtr& basis);
LemmaReport verify_lemma_V(const BasisPtr& basis);
LemmaReport verify_toeplitz_untwist(const BasisPtr& basis);

} // namespace ckdual::duality
