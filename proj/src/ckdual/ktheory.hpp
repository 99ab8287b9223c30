#pragma once

#include <vector>

#include "ckdual/sft.hpp"
#include "ckdual/zlinalg.hpp"

namespace ckdual::ktheory {

using zlinalg::BigInt;
using zlinalg::FGAbelianGroup;
using zlinalg::IntMatrix;

// K-theory and K-homology of one Cuntz-Krieger algebra.
struct AlgebraGroups {
  FGAbelianGroup K0;
  FGAbelianGroup K1;
  FGAbelianGroup Khom0;  // K^0
  FGAbelianGroup Khom1;  // K^1

  bool operator==(const AlgebraGroups&) const = default;
};

struct KTheoryReport {
  sft::ZeroOneMatrix matrix;
  AlgebraGroups O_A;
  AlgebraGroups O_AT;

  bool operator==(const KTheoryReport&) const = default;
};

struct DualityReport {
  bool presentation_match_K0_Khom1 = false;
  bool presentation_match_K1_Khom0 = false;
  bool abstract_iso_cokernels = false;
  std::vector<BigInt> invariant_factors_A;   // of coker(1 - A)
  std::vector<BigInt> invariant_factors_AT;  // of coker(1 - A^T)

  bool operator==(const DualityReport&) const = default;
};

// I - A as an integer matrix.
IntMatrix one_minus(const sft::ZeroOneMatrix& a);

// K0(O_A) = coker(1 - A^T), K1(O_A) = ker(1 - A^T),
// K^0(O_A) = ker(1 - A),     K^1(O_A) = coker(1 - A);
// the groups of O_{A^T} follow by swapping A and A^T.
AlgebraGroups groups_of(const sft::ZeroOneMatrix& a);

KTheoryReport k_groups(const sft::ZeroOneMatrix& a);

DualityReport duality_report(const sft::ZeroOneMatrix& a);

// coker(1 - A).
FGAbelianGroup bowen_franks(const sft::ZeroOneMatrix& a);

} // namespace ckdual::ktheory
