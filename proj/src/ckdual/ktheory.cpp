#include "ckdual/ktheory.hpp"

namespace ckdual::ktheory {

IntMatrix one_minus(const sft::ZeroOneMatrix& a) {
  const int n = a.size();
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = (i == j ? 1 : 0) - a.at(i, j);
  return m;
}

namespace {

// Presenting matrices as seen from each side of the duality square.
IntMatrix k0_presentation(const sft::ZeroOneMatrix& a) { return one_minus(sft::transpose(a)); }
IntMatrix khom1_presentation(const sft::ZeroOneMatrix& a) { return one_minus(a); }

} // namespace

AlgebraGroups groups_of(const sft::ZeroOneMatrix& a) {
  const int n = a.size();
  const IntMatrix k_side = k0_presentation(a);
  const IntMatrix khom_side = khom1_presentation(a);
  AlgebraGroups g;
  g.K0 = zlinalg::cokernel(k_side, n);
  g.K1 = zlinalg::free_group(static_cast<int>(zlinalg::kernel_basis(k_side).size()));
  g.Khom0 = zlinalg::free_group(static_cast<int>(zlinalg::kernel_basis(khom_side).size()));
  g.Khom1 = zlinalg::cokernel(khom_side, n);
  return g;
}

KTheoryReport k_groups(const sft::ZeroOneMatrix& a) {
  return KTheoryReport{a, groups_of(a), groups_of(sft::transpose(a))};
}

DualityReport duality_report(const sft::ZeroOneMatrix& a) {
  const sft::ZeroOneMatrix at = sft::transpose(a);
  DualityReport r;
  // K0(O_A) and K^1(O_{A^T}) are both presented by 1 - A^T; K1(O_A) and
  // K^0(O_{A^T}) are both ker(1 - A^T).
  r.presentation_match_K0_Khom1 = k0_presentation(a) == khom1_presentation(at);
  r.presentation_match_K1_Khom0 =
      zlinalg::kernel_basis(k0_presentation(a)) == zlinalg::kernel_basis(khom1_presentation(at));
  const auto coker_a = zlinalg::cokernel(one_minus(a), a.size());
  const auto coker_at = zlinalg::cokernel(one_minus(at), a.size());
  r.invariant_factors_A = coker_a.torsion;
  r.invariant_factors_AT = coker_at.torsion;
  r.abstract_iso_cokernels = coker_a == coker_at;
  return r;
}

FGAbelianGroup bowen_franks(const sft::ZeroOneMatrix& a) { return zlinalg::cokernel(one_minus(a), a.size()); }

} // namespace ckdual::ktheory
