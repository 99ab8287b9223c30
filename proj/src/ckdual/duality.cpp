#include "ckdual/duality.hpp"

#include <algorithm>
#include <set>

#include "ckdual/error.hpp"

namespace ckdual::duality {

using ckalg::AlgebraTag;
using ckalg::Rational;
using ckalg::TensorElement;

HybridElement::HybridElement(BasisPtr basis, ckalg::AlgebraPtr algebra)
    : basis_(std::move(basis)), algebra_(std::move(algebra)), valid_(basis_->m_max()) {}

int HybridElement::valid_up_to() const { return valid_; }

namespace {

long long integer_coefficient(const Rational& c) {
  if (c.get_den() != 1 || !c.get_num().fits_slong_p())
    throw Error(ErrorKind::InvalidArgument, "hybrid coefficients must be machine integers");
  return c.get_num().get_si();
}

std::pair<int, int> combine_shift(const std::optional<std::pair<int, int>>& a, std::pair<int, int> b) {
  if (!a) return b;
  return {std::min(a->first, b.first), std::max(a->second, b.second)};
}

ExprPtr make_node(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs = nullptr, long long scale = 1) {
  if (!lhs || (kind != Expr::Kind::Adjoint && kind != Expr::Kind::Scale && !rhs)) return nullptr;
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  e->scale = scale;
  return e;
}

} // namespace

void HybridElement::add(const CKKey& key, const FockOperator& op, const Rational& coeff) {
  if (op.basis() != basis_ && !(*op.basis() == *basis_))
    throw Error(ErrorKind::BasisMismatch, "operator lives on a different Fock basis");
  const long long c = integer_coefficient(coeff);
  valid_ = std::min(valid_, op.valid_up_to());
  shift_ = combine_shift(shift_, {op.min_shift(), op.max_shift()});
  if (c == 0 || ckalg::is_zero_term(algebra_->matrix, key)) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, op * c);
    return;
  }
  it->second += op * c;
  if (it->second.is_zero()) terms_.erase(it);
}

HybridElement HybridElement::generator(const BasisPtr& basis, FockGenerator g, int index, const CKElement& c) {
  FockOperator op = [&] {
    switch (g) {
    case FockGenerator::Identity: return FockOperator::identity(basis);
    case FockGenerator::VacuumProjection: return fock::vacuum_projection(basis);
    case FockGenerator::Left: return fock::build_creation(basis, fock::Side::Left, index);
    case FockGenerator::Right: return fock::build_creation(basis, fock::Side::Right, index);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown Fock generator");
  }();
  HybridElement h = from_operator(op, c);
  auto leaf = std::make_shared<Expr>();
  leaf->kind = Expr::Kind::Leaf;
  leaf->generator = g;
  leaf->index = index;
  leaf->factor = c;
  h.provenance_ = std::move(leaf);
  return h;
}

HybridElement HybridElement::from_operator(const FockOperator& op, const CKElement& c) {
  if (c.algebra()->tag != AlgebraTag::A)
    throw Error(ErrorKind::SignatureMismatch, "the symbolic factor of a hybrid element must lie in O_A");
  HybridElement h(op.basis(), c.algebra());
  h.valid_ = op.valid_up_to();
  h.shift_ = std::pair{op.min_shift(), op.max_shift()};
  for (const auto& [key, coeff] : c.terms()) h.add(key, op, coeff);
  return h;
}

void HybridElement::require_compatible(const HybridElement& o) const {
  if (basis_ != o.basis_ && !(*basis_ == *o.basis_))
    throw Error(ErrorKind::BasisMismatch, "hybrid elements live on different Fock bases");
  if (!(*algebra_ == *o.algebra_)) throw Error(ErrorKind::SignatureMismatch, "hybrid elements use different algebras");
}

HybridElement hybrid_add(const HybridElement& x, const HybridElement& y) {
  x.require_compatible(y);
  HybridElement out = x;
  for (const auto& [key, op] : y.terms_) out.add(key, op);
  out.valid_ = std::min(x.valid_, y.valid_);
  if (y.shift_) out.shift_ = combine_shift(x.shift_, *y.shift_);
  out.provenance_ = make_node(Expr::Kind::Sum, x.provenance_, y.provenance_);
  return out;
}

HybridElement hybrid_sub(const HybridElement& x, const HybridElement& y) {
  x.require_compatible(y);
  HybridElement out = x;
  for (const auto& [key, op] : y.terms_) out.add(key, op, -1);
  out.valid_ = std::min(x.valid_, y.valid_);
  if (y.shift_) out.shift_ = combine_shift(x.shift_, *y.shift_);
  out.provenance_ = make_node(Expr::Kind::Difference, x.provenance_, y.provenance_);
  return out;
}

HybridElement hybrid_mul(const HybridElement& x, const HybridElement& y) {
  x.require_compatible(y);
  HybridElement out(x.basis_, x.algebra_);
  const auto& a = x.algebra_->matrix;
  for (const auto& [kx, opx] : x.terms_)
    for (const auto& [ky, opy] : y.terms_) {
      const auto products = ckalg::multiply_terms(a, kx, ky);
      if (products.empty()) continue;
      const FockOperator prod = opx * opy;
      for (const auto& [key, c] : products) out.add(key, prod, c);
    }
  const std::pair<int, int> sx = x.shift_.value_or(std::pair{0, 0});
  const std::pair<int, int> sy = y.shift_.value_or(std::pair{0, 0});
  out.valid_ = std::min({y.valid_, x.valid_ - sy.second, x.basis_->m_max()});
  out.shift_ = std::pair{sx.first + sy.first, sx.second + sy.second};
  out.provenance_ = make_node(Expr::Kind::Product, x.provenance_, y.provenance_);
  return out;
}

HybridElement hybrid_adjoint(const HybridElement& x) {
  HybridElement out(x.basis_, x.algebra_);
  for (const auto& [key, op] : x.terms_) out.add(CKKey{key.nu, key.mu}, fock::adjoint(op));
  const std::pair<int, int> s = x.shift_.value_or(std::pair{0, 0});
  out.valid_ = std::min(x.basis_->m_max(), x.valid_ + s.first);
  out.shift_ = std::pair{-s.second, -s.first};
  out.provenance_ = make_node(Expr::Kind::Adjoint, x.provenance_);
  return out;
}

HybridElement hybrid_scale(const HybridElement& x, long long c) {
  HybridElement out(x.basis_, x.algebra_);
  for (const auto& [key, op] : x.terms_) out.add(key, op, Rational(static_cast<long>(c)));
  out.valid_ = x.valid_;
  out.shift_ = x.shift_;
  out.provenance_ = make_node(Expr::Kind::Scale, x.provenance_, nullptr, c);
  return out;
}

HybridElement hybrid_commutator(const HybridElement& x, const HybridElement& y) { return x * y - y * x; }

HybridElement hybrid_zero(const BasisPtr& basis) {
  HybridElement out(basis, ckalg::make_algebra(basis->matrix(), AlgebraTag::A));
  auto node = std::make_shared<Expr>();
  node->kind = Expr::Kind::Zero;
  out.provenance_ = std::move(node);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

TensorElement quotient_of(const Expr& e, const sft::ZeroOneMatrix& a) {
  switch (e.kind) {
  case Expr::Kind::Zero: return TensorElement(ckalg::signature_A_AT_A(a));
  case Expr::Kind::Leaf: {
    const auto sig = ckalg::signature_A_AT_A(a);
    const auto& s = std::get<ckalg::AlgebraPtr>(sig[0]);
    const auto& t = std::get<ckalg::AlgebraPtr>(sig[1]);
    switch (e.generator) {
    case FockGenerator::VacuumProjection: return TensorElement(sig);
    case FockGenerator::Identity: return TensorElement::tensor({CKElement::unit(s), CKElement::unit(t), *e.factor});
    case FockGenerator::Left:
      return TensorElement::tensor({CKElement::generator(s, e.index), CKElement::unit(t), *e.factor});
    case FockGenerator::Right:
      return TensorElement::tensor({CKElement::unit(s), CKElement::generator(t, e.index), *e.factor});
    }
    break;
  }
  case Expr::Kind::Sum: return quotient_of(*e.lhs, a) + quotient_of(*e.rhs, a);
  case Expr::Kind::Difference: return quotient_of(*e.lhs, a) - quotient_of(*e.rhs, a);
  case Expr::Kind::Product: return quotient_of(*e.lhs, a) * quotient_of(*e.rhs, a);
  case Expr::Kind::Adjoint: return ckalg::tensor_adjoint(quotient_of(*e.lhs, a));
  case Expr::Kind::Scale: {
    TensorElement t = quotient_of(*e.lhs, a);
    t *= Rational(static_cast<long>(e.scale));
    return t;
  }
  }
  throw Error(ErrorKind::InvalidArgument, "malformed generator expression");
}

} // namespace

TensorElement quotient(const HybridElement& x) {
  if (!x.provenance())
    throw Error(ErrorKind::InvalidArgument, "the quotient map is only defined on elements built from generators");
  return quotient_of(*x.provenance(), x.basis()->matrix());
}

HybridElement left_generator(const BasisPtr& basis, int k) {
  const auto s = ckalg::make_algebra(basis->matrix(), AlgebraTag::A);
  return HybridElement::generator(basis, FockGenerator::Left, k, CKElement::unit(s));
}

HybridElement build_W(const BasisPtr& basis) {
  const auto s = ckalg::make_algebra(basis->matrix(), AlgebraTag::A);
  HybridElement w = HybridElement::generator(basis, FockGenerator::Right, 0,
                                             ckalg::ck_adjoint(CKElement::generator(s, 0)));
  for (int i = 1; i < basis->matrix().size(); ++i)
    w = w + HybridElement::generator(basis, FockGenerator::Right, i, ckalg::ck_adjoint(CKElement::generator(s, i)));
  return w;
}

HybridElement build_V(const BasisPtr& basis, int k) {
  return hybrid_adjoint(build_W(basis)) * left_generator(basis, k);
}

// ---------------------------------------------------------------------------

namespace {

using KeyedOps = std::map<CKKey, FockOperator>;

void add_op(KeyedOps& ops, const CKKey& key, const FockOperator& op) {
  auto it = ops.find(key);
  if (it == ops.end()) {
    if (!op.is_zero()) ops.emplace(key, op);
    return;
  }
  it->second += op;
  if (it->second.is_zero()) ops.erase(it);
}

// Replaces complete families {s_{mu k} s_{nu k}^*}_k sharing one operator
// by s_mu s_nu^*, until nothing changes.
KeyedOps collapse(KeyedOps ops, const sft::ZeroOneMatrix& a) {
  for (bool changed = true; changed;) {
    changed = false;
    std::map<CKKey, std::vector<CKKey>> groups;
    for (const auto& [key, op] : ops) {
      if (key.mu.empty() || key.nu.empty() || key.mu.back() != key.nu.back()) continue;
      groups[CKKey{sft::Word(key.mu.begin(), key.mu.end() - 1), sft::Word(key.nu.begin(), key.nu.end() - 1)}]
          .push_back(key);
    }
    for (const auto& [parent, children] : groups) {
      const auto expected = ckalg::expand_term(a, parent);
      if (expected.size() != children.size()) continue;
      const std::set<std::pair<sft::Word, sft::Word>> have = [&] {
        std::set<std::pair<sft::Word, sft::Word>> h;
        for (const auto& c : children) h.emplace(c.mu, c.nu);
        return h;
      }();
      bool complete = true;
      for (const auto& e : expected) complete = complete && have.count({e.mu, e.nu}) > 0;
      if (!complete) continue;
      const FockOperator& first = ops.at(children.front());
      bool uniform = true;
      for (const auto& c : children) uniform = uniform && ops.at(c).same_entries(first);
      if (!uniform) continue;
      const FockOperator op = first;
      for (const auto& c : children) ops.erase(c);
      add_op(ops, parent, op);
      changed = true;
    }
  }
  return ops;
}

void finish(ItemResult& r) {
  r.holds = r.defects.empty() && r.symbolic_residual.empty();
  r.vacuum_adjacent = true;
  r.max_defect_length = -1;
  for (const auto& d : r.defects) {
    r.max_defect_length = std::max(r.max_defect_length, d.column_length);
    if (d.column_length > 1) r.vacuum_adjacent = false;
  }
}

// Folds per-generator results into one item.
ItemResult merge_items(const std::string& id, const std::string& statement, std::vector<ItemResult> parts) {
  ItemResult r;
  r.id = id;
  r.statement = statement;
  r.valid_up_to = parts.empty() ? 0 : parts.front().valid_up_to;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    r.valid_up_to = std::min(r.valid_up_to, parts[k].valid_up_to);
    r.rank_bound += parts[k].rank_bound;
    for (auto d : parts[k].defects) {
      d.k = static_cast<int>(k) + 1;
      r.defects.push_back(std::move(d));
    }
    if (!parts[k].symbolic_residual.empty()) {
      if (!r.symbolic_residual.empty()) r.symbolic_residual += "; ";
      r.symbolic_residual += "k=" + std::to_string(k + 1) + ": " + parts[k].symbolic_residual;
    }
  }
  finish(r);
  return r;
}

ItemResult compare_symbolic(const std::string& id, const std::string& statement, const TensorElement& lhs,
                            const TensorElement& rhs) {
  ItemResult r;
  r.id = id;
  r.statement = statement;
  if (!ckalg::tensor_equal(lhs, rhs)) r.symbolic_residual = (lhs - rhs).render();
  finish(r);
  return r;
}

} // namespace

ItemResult compare(const std::string& id, const std::string& statement, const HybridElement& lhs,
                   const HybridElement& rhs) {
  const HybridElement diff = lhs - rhs;
  const auto& basis = diff.basis();
  const auto& a = diff.algebra()->matrix;
  const int valid = diff.valid_up_to();

  std::size_t level = 0;
  for (const auto& [key, op] : diff.terms()) level = std::max({level, key.mu.size(), key.nu.size()});

  // Uniform-level terms are linearly independent, so the difference vanishes
  // iff every expanded coefficient vanishes on the valid domain.
  KeyedOps expanded;
  for (const auto& [key, op] : diff.terms()) {
    const FockOperator masked = op.restricted_to(valid);
    if (masked.is_zero()) continue;
    std::vector<CKKey> frontier{key};
    while (!frontier.empty()) {
      CKKey cur = std::move(frontier.back());
      frontier.pop_back();
      if (std::min(cur.mu.size(), cur.nu.size()) >= level) {
        add_op(expanded, cur, masked);
        continue;
      }
      for (auto& child : ckalg::expand_term(a, cur)) frontier.push_back(std::move(child));
    }
  }

  ItemResult r;
  r.id = id;
  r.statement = statement;
  r.valid_up_to = valid;
  for (const auto& [key, op] : collapse(std::move(expanded), a)) {
    r.rank_bound += fock::exact_rank(op);
    const std::string term = ckalg::render_key(key, 's', a.size());
    for (int j = 0; j < basis->size(); ++j) {
      const auto& col = op.column(j);
      if (col.empty()) continue;
      HybridDefect d;
      d.ck_term = term;
      d.column = basis->label(j);
      d.column_length = basis->length(j);
      for (const auto& e : col) d.delta[basis->label(e.row)] = e.value;
      r.defects.push_back(std::move(d));
    }
  }
  finish(r);
  return r;
}

bool LemmaReport::all_hold() const {
  return std::all_of(items.begin(), items.end(), [](const ItemResult& i) { return i.holds; });
}

namespace {

struct Ingredients {
  BasisPtr basis;
  ckalg::AlgebraPtr s;
  int n;
  HybridElement W;
  HybridElement Ws;
  HybridElement WsW;
  HybridElement P1;  // P_Ω ⊗ 1
  std::vector<HybridElement> L;
  std::vector<HybridElement> V;
  std::vector<HybridElement> VVs;  // V_j V_j^*

  explicit Ingredients(const BasisPtr& b)
      : basis(b),
        s(ckalg::make_algebra(b->matrix(), AlgebraTag::A)),
        n(b->matrix().size()),
        W(build_W(b)),
        Ws(hybrid_adjoint(W)),
        WsW(Ws * W),
        P1(HybridElement::generator(b, FockGenerator::VacuumProjection, 0, CKElement::unit(s))) {
    for (int k = 0; k < n; ++k) {
      L.push_back(left_generator(b, k));
      V.push_back(Ws * L.back());
      VVs.push_back(V.back() * hybrid_adjoint(V.back()));
    }
  }

  const sft::ZeroOneMatrix& a() const { return basis->matrix(); }
  HybridElement zero() const { return hybrid_zero(basis); }
};

LemmaReport new_report(const std::string& lemma, const BasisPtr& basis) {
  LemmaReport r;
  r.lemma = lemma;
  r.matrix = basis->matrix().rows();
  r.m_max = basis->m_max();
  return r;
}

} // namespace

LemmaReport verify_lemma_W(const BasisPtr& basis) {
  const Ingredients g(basis);
  const auto& a = g.a();
  const int n = g.n;
  LemmaReport report = new_report("W", basis);

  report.items.push_back(compare_symbolic("i", "(π ⊗ 1)(W) = ᾱ(1 ⊗ z)", quotient(g.W),
                                          ckalg::alpha_bar(a, ckalg::CircleGenerator::z())));

  HybridElement rhs_ii = g.P1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!a(j, i)) continue;
      const FockOperator rj = fock::build_creation(basis, fock::Side::Right, j);
      rhs_ii = rhs_ii + HybridElement::from_operator(rj * fock::adjoint(rj), CKElement::term(g.s, {i}, {i}));
    }
  report.items.push_back(compare("ii", "W*W = Σ_{i,j} A_ji R_j R_j* ⊗ s_i s_i* + P_Ω ⊗ 1", g.WsW, rhs_ii));

  report.items.push_back(compare("iii", "[W*, W] = P_Ω ⊗ 1", g.WsW - g.W * g.Ws, g.P1));
  report.items.push_back(compare("iv", "(P_Ω ⊗ 1) W = 0", g.P1 * g.W, g.zero()));

  std::vector<ItemResult> v_parts, vi_parts;
  for (int k = 0; k < n; ++k) {
    v_parts.push_back(compare("v", "", hybrid_commutator(g.W, g.L[k]), g.zero()));
    const HybridElement pk =
        HybridElement::generator(basis, FockGenerator::VacuumProjection, 0, CKElement::generator(g.s, k));
    vi_parts.push_back(compare("vi", "", hybrid_commutator(g.Ws, g.L[k]), pk));
  }
  report.items.push_back(merge_items("v", "[W, L_k ⊗ 1] = 0", std::move(v_parts)));
  report.items.push_back(merge_items("vi", "[W*, L_k ⊗ 1] = P_Ω ⊗ s_k", std::move(vi_parts)));
  return report;
}

LemmaReport verify_lemma_V(const BasisPtr& basis) {
  const Ingredients g(basis);
  const auto& a = g.a();
  const int n = g.n;
  LemmaReport report = new_report("V", basis);

  std::vector<ItemResult> i_parts, iii_parts, iv_parts, v_parts;
  for (int k = 0; k < n; ++k)
    i_parts.push_back(
        compare_symbolic("i", "", quotient(g.V[k]), ckalg::alpha_bar(a, ckalg::CircleGenerator::s(k))));
  report.items.push_back(merge_items("i", "(π ⊗ 1)(V_k) = ᾱ(s_k ⊗ 1)", std::move(i_parts)));

  HybridElement sum = g.zero();
  for (const auto& v : g.VVs) sum = sum + v;
  report.items.push_back(compare("ii", "Σ_j V_j V_j* = W*W", sum, g.WsW));

  for (int k = 0; k < n; ++k) {
    HybridElement rhs = g.zero();
    for (int j = 0; j < n; ++j)
      if (a(k, j)) rhs = rhs + g.VVs[j];
    iii_parts.push_back(compare("iii", "", hybrid_adjoint(g.V[k]) * g.V[k], rhs));
    iv_parts.push_back(compare("iv", "", hybrid_commutator(g.W, g.V[k]), g.zero()));
    v_parts.push_back(compare("v", "", hybrid_commutator(g.Ws, g.V[k]), g.zero()));
  }
  report.items.push_back(merge_items("iii", "V_k* V_k = Σ_j A_kj V_j V_j*", std::move(iii_parts)));
  report.items.push_back(merge_items("iv", "[W, V_k] = 0", std::move(iv_parts)));
  report.items.push_back(merge_items("v", "[W*, V_k] = 0", std::move(v_parts)));
  return report;
}

LemmaReport verify_toeplitz_untwist(const BasisPtr& basis) {
  const Ingredients g(basis);
  const auto& a = g.a();
  const int n = g.n;
  LemmaReport report = new_report("toeplitz", basis);

  report.items.push_back(compare("shift", "W*W - WW* = P_Ω ⊗ 1", g.WsW - g.W * g.Ws, g.P1));
  report.items.push_back(compare("projection", "(W*W)^2 = W*W", g.WsW * g.WsW, g.WsW));

  std::vector<ItemResult> unit_parts, ck_parts;
  for (int k = 0; k < n; ++k) {
    unit_parts.push_back(compare("unit", "", g.WsW * g.V[k], g.V[k]));
    HybridElement rhs = g.zero();
    for (int j = 0; j < n; ++j)
      if (a(k, j)) rhs = rhs + g.VVs[j];
    ck_parts.push_back(compare("ck", "", hybrid_adjoint(g.V[k]) * g.V[k], rhs));
  }
  report.items.push_back(merge_items("unit", "(W*W) V_k = V_k", std::move(unit_parts)));

  HybridElement sum = g.zero();
  for (const auto& v : g.VVs) sum = sum + v;
  report.items.push_back(compare("ranges", "Σ_j V_j V_j* = W*W", sum, g.WsW));
  report.items.push_back(merge_items("ck", "V_k* V_k = Σ_j A_kj V_j V_j*", std::move(ck_parts)));
  return report;
}

} // namespace ckdual::duality
