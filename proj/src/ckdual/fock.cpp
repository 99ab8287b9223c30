#include "ckdual/fock.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "ckdual/error.hpp"

namespace ckdual::fock {

std::size_t FockBasis::WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (const auto l : w) h = (h ^ static_cast<std::size_t>(l + 1)) * 1099511628211ull;
  return h;
}

FockBasis::FockBasis(sft::ZeroOneMatrix a, int m_max) : matrix_(std::move(a)), m_max_(m_max) {
  if (m_max < 1) throw Error(ErrorKind::InvalidArgument, "m_max must be at least 1");
  for (int len = 0; len <= m_max; ++len) {
    sector_start_.push_back(static_cast<int>(words_.size()));
    for (auto& w : sft::enumerate_words(matrix_, len)) words_.push_back(std::move(w));
  }
  sector_start_.push_back(static_cast<int>(words_.size()));
  index_.reserve(words_.size());
  for (int i = 0; i < size(); ++i) index_.emplace(words_[static_cast<std::size_t>(i)], i);
}

std::optional<int> FockBasis::index_of(const Word& w) const {
  const auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::pair<int, int> FockBasis::sector(int len) const {
  if (len < 0 || len > m_max_) return {0, 0};
  return {sector_start_[static_cast<std::size_t>(len)], sector_start_[static_cast<std::size_t>(len + 1)]};
}

std::string FockBasis::label(int index) const {
  const Word& w = word(index);
  return w.empty() ? std::string("Ω") : sft::word_to_string(w, matrix_.size());
}

BasisPtr make_basis(const sft::ZeroOneMatrix& a, int m_max) { return std::make_shared<const FockBasis>(a, m_max); }

namespace {

long long checked_add(long long a, long long b) {
  long long r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "Fock operator entry overflow");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "Fock operator entry overflow");
  return r;
}

// a + sign * b on sorted sparse columns.
Column merge(const Column& a, const Column& b, long long sign) {
  Column out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].row < b[j].row)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].row < a[i].row) {
      out.push_back(Entry{b[j].row, checked_mul(sign, b[j].value)});
      ++j;
    } else {
      const long long v = checked_add(a[i].value, checked_mul(sign, b[j].value));
      if (v != 0) out.push_back(Entry{a[i].row, v});
      ++i;
      ++j;
    }
  }
  return out;
}

} // namespace

FockOperator::FockOperator(BasisPtr basis, int valid_up_to, int min_shift, int max_shift)
    : basis_(std::move(basis)),
      valid_up_to_(std::clamp(valid_up_to, -1, basis_->m_max())),
      min_shift_(min_shift),
      max_shift_(max_shift),
      columns_(static_cast<std::size_t>(basis_->size())) {}

FockOperator FockOperator::zero(BasisPtr basis) {
  const int m = basis->m_max();
  return FockOperator(std::move(basis), m, 0, 0);
}

FockOperator FockOperator::identity(BasisPtr basis) {
  FockOperator op = zero(std::move(basis));
  for (int j = 0; j < op.basis_->size(); ++j) op.columns_[static_cast<std::size_t>(j)] = Column{Entry{j, 1}};
  return op;
}

void FockOperator::set_column(int j, Column col) {
  std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
  Column clean;
  for (const auto& e : col) {
    if (!clean.empty() && clean.back().row == e.row)
      clean.back().value = checked_add(clean.back().value, e.value);
    else
      clean.push_back(e);
  }
  std::erase_if(clean, [](const Entry& e) { return e.value == 0; });
  columns_[static_cast<std::size_t>(j)] = std::move(clean);
}

long long FockOperator::entry(int row, int col) const {
  for (const auto& e : column(col))
    if (e.row == row) return e.value;
  return 0;
}

std::size_t FockOperator::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

long long FockOperator::max_abs_entry() const {
  long long m = 0;
  for (const auto& c : columns_)
    for (const auto& e : c) m = std::max(m, e.value < 0 ? -e.value : e.value);
  return m;
}

bool FockOperator::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const Column& c) { return c.empty(); });
}

FockOperator FockOperator::restricted_to(int len) const {
  FockOperator out = *this;
  for (int j = 0; j < basis_->size(); ++j)
    if (basis_->length(j) > len) out.columns_[static_cast<std::size_t>(j)].clear();
  return out;
}

void FockOperator::require_same_basis(const FockOperator& o) const {
  if (basis_ != o.basis_ && !(*basis_ == *o.basis_))
    throw Error(ErrorKind::BasisMismatch, "operators live on different Fock bases");
}

FockOperator& FockOperator::operator+=(const FockOperator& o) {
  require_same_basis(o);
  for (std::size_t j = 0; j < columns_.size(); ++j) columns_[j] = merge(columns_[j], o.columns_[j], 1);
  valid_up_to_ = std::min(valid_up_to_, o.valid_up_to_);
  min_shift_ = std::min(min_shift_, o.min_shift_);
  max_shift_ = std::max(max_shift_, o.max_shift_);
  return *this;
}

FockOperator& FockOperator::operator-=(const FockOperator& o) {
  require_same_basis(o);
  for (std::size_t j = 0; j < columns_.size(); ++j) columns_[j] = merge(columns_[j], o.columns_[j], -1);
  valid_up_to_ = std::min(valid_up_to_, o.valid_up_to_);
  min_shift_ = std::min(min_shift_, o.min_shift_);
  max_shift_ = std::max(max_shift_, o.max_shift_);
  return *this;
}

FockOperator& FockOperator::operator*=(long long c) {
  for (auto& col : columns_) {
    if (c == 0) {
      col.clear();
      continue;
    }
    for (auto& e : col) e.value = checked_mul(e.value, c);
  }
  return *this;
}

FockOperator operator*(const FockOperator& x, const FockOperator& y) {
  x.require_same_basis(y);
  const int m = x.basis_->m_max();
  const int valid = std::min({y.valid_up_to_, x.valid_up_to_ - y.max_shift_, m});
  FockOperator out(x.basis_, valid, x.min_shift_ + y.min_shift_, x.max_shift_ + y.max_shift_);
  const auto n = static_cast<std::size_t>(x.basis_->size());
  std::vector<long long> acc(n, 0);
  std::vector<int> touched;
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& ey : y.columns_[j]) {
      for (const auto& ex : x.columns_[static_cast<std::size_t>(ey.row)]) {
        auto& slot = acc[static_cast<std::size_t>(ex.row)];
        if (slot == 0) touched.push_back(ex.row);
        slot = checked_add(slot, checked_mul(ex.value, ey.value));
      }
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    Column col;
    for (int r : touched) {
      if (acc[static_cast<std::size_t>(r)] != 0) col.push_back(Entry{r, acc[static_cast<std::size_t>(r)]});
      acc[static_cast<std::size_t>(r)] = 0;
    }
    touched.clear();
    out.columns_[j] = std::move(col);
  }
  return out;
}

FockOperator build_creation(const BasisPtr& basis, Side side, int k) {
  const auto& a = basis->matrix();
  if (k < 0 || k >= a.size()) throw Error(ErrorKind::InvalidArgument, "creation index out of range");
  FockOperator op(basis, basis->m_max() - 1, 1, 1);
  for (int j = 0; j < basis->size(); ++j) {
    const Word& w = basis->word(j);
    if (static_cast<int>(w.size()) >= basis->m_max()) continue;
    Word next;
    if (side == Side::Left) {
      if (!w.empty() && !a(k, w.front())) continue;
      next.reserve(w.size() + 1);
      next.push_back(k);
      next.insert(next.end(), w.begin(), w.end());
    } else {
      if (!w.empty() && !a(w.back(), k)) continue;
      next = w;
      next.push_back(k);
    }
    op.set_column(j, Column{Entry{*basis->index_of(next), 1}});
  }
  return op;
}

FockOperator adjoint(const FockOperator& op) {
  const auto& basis = op.basis();
  FockOperator out(basis, std::min(basis->m_max(), op.valid_up_to() + op.min_shift()), -op.max_shift(),
                   -op.min_shift());
  std::vector<Column> cols(static_cast<std::size_t>(basis->size()));
  for (int j = 0; j < basis->size(); ++j)
    for (const auto& e : op.column(j)) cols[static_cast<std::size_t>(e.row)].push_back(Entry{j, e.value});
  for (int j = 0; j < basis->size(); ++j) out.set_column(j, std::move(cols[static_cast<std::size_t>(j)]));
  return out;
}

FockOperator vacuum_projection(const BasisPtr& basis) {
  FockOperator op = FockOperator::zero(basis);
  op.set_column(0, Column{Entry{0, 1}});
  return op;
}

FockOperator commutator(const FockOperator& x, const FockOperator& y) { return x * y - y * x; }

namespace {

int rank_of_columns(const std::vector<std::map<int, ckalg::Rational>>& columns) {
  std::map<int, std::map<int, ckalg::Rational>> pivots;  // leading row -> reduced vector
  for (auto v : columns) {
    while (!v.empty()) {
      const int lead = v.begin()->first;
      const auto it = pivots.find(lead);
      if (it == pivots.end()) {
        pivots.emplace(lead, std::move(v));
        break;
      }
      const ckalg::Rational factor = v.begin()->second / it->second.begin()->second;
      for (const auto& [r, c] : it->second) {
        auto& slot = v[r];
        slot -= factor * c;
        if (slot == 0) v.erase(r);
      }
    }
  }
  return static_cast<int>(pivots.size());
}

} // namespace

int block_rank(const FockOperator& op, std::pair<int, int> rows, std::pair<int, int> cols) {
  std::vector<std::map<int, ckalg::Rational>> columns;
  for (int j = cols.first; j < cols.second; ++j) {
    std::map<int, ckalg::Rational> v;
    for (const auto& e : op.column(j))
      if (e.row >= rows.first && e.row < rows.second) v.emplace(e.row, ckalg::Rational(static_cast<long>(e.value)));
    if (!v.empty()) columns.push_back(std::move(v));
  }
  return rank_of_columns(columns);
}

int exact_rank(const FockOperator& op) { return block_rank(op, {0, op.basis()->size()}, {0, op.basis()->size()}); }

RelationReport verify_relation(const std::string& relation, const FockOperator& lhs, const FockOperator& rhs) {
  const FockOperator diff = lhs - rhs;
  const auto& basis = diff.basis();
  RelationReport r;
  r.relation = relation;
  r.valid_up_to = diff.valid_up_to();
  for (int j = 0; j < basis->size(); ++j) {
    if (basis->length(j) > diff.valid_up_to()) break;
    const Column& col = diff.column(j);
    if (col.empty()) continue;
    ColumnDefect d;
    d.column = basis->label(j);
    d.column_length = basis->length(j);
    for (const auto& e : col) d.delta[basis->label(e.row)] = e.value;
    r.defects.push_back(std::move(d));
  }
  r.holds = r.defects.empty();
  return r;
}

std::vector<RelationReport> verify_creation_relations(const BasisPtr& basis, const std::string& which) {
  if (which != "all" && which != "i" && which != "ii" && which != "iii" && which != "iv")
    throw Error(ErrorKind::InvalidArgument, "unknown relation selector \"" + which + "\"");
  const auto& a = basis->matrix();
  const int n = a.size();
  std::vector<FockOperator> L, R, Ls, Rs;
  for (int k = 0; k < n; ++k) {
    L.push_back(build_creation(basis, Side::Left, k));
    R.push_back(build_creation(basis, Side::Right, k));
    Ls.push_back(adjoint(L.back()));
    Rs.push_back(adjoint(R.back()));
  }
  const FockOperator P = vacuum_projection(basis);
  const auto wants = [&](const char* id) { return which == "all" || which == id; };
  std::vector<RelationReport> out;
  if (wants("i")) {
    for (int k = 0; k < n; ++k) {
      FockOperator rhs = P;
      for (int i = 0; i < n; ++i)
        if (a(k, i)) rhs += L[i] * Ls[i];
      auto r = verify_relation("i", Ls[k] * L[k], rhs);
      r.k = k + 1;
      out.push_back(std::move(r));
    }
  }
  if (wants("ii")) {
    for (int k = 0; k < n; ++k) {
      FockOperator rhs = P;
      for (int i = 0; i < n; ++i)
        if (a(i, k)) rhs += R[i] * Rs[i];
      auto r = verify_relation("ii", Rs[k] * R[k], rhs);
      r.k = k + 1;
      out.push_back(std::move(r));
    }
  }
  if (wants("iii")) {
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        auto r = verify_relation("iii", commutator(L[k], R[l]), FockOperator::zero(basis));
        r.k = k + 1;
        r.l = l + 1;
        out.push_back(std::move(r));
      }
  }
  if (wants("iv")) {
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        auto r = verify_relation("iv", commutator(Ls[k], R[l]), k == l ? P : FockOperator::zero(basis));
        r.k = k + 1;
        r.l = l + 1;
        out.push_back(std::move(r));
      }
  }
  return out;
}

bool orbit_spans(const BasisPtr& basis) {
  const int n = basis->matrix().size();
  std::vector<FockOperator> ops;
  for (int k = 0; k < n; ++k) {
    for (Side side : {Side::Left, Side::Right}) {
      ops.push_back(build_creation(basis, side, k));
      ops.push_back(adjoint(ops.back()));
    }
  }
  // Every generator maps basis vectors to multiples of basis vectors, so the
  // invariant subspace generated by Ω is spanned by the reachable words.
  std::vector<bool> seen(static_cast<std::size_t>(basis->size()), false);
  std::queue<int> queue;
  seen[0] = true;
  queue.push(0);
  int reached = 1;
  while (!queue.empty()) {
    const int j = queue.front();
    queue.pop();
    for (const auto& op : ops)
      for (const auto& e : op.column(j))
        if (!seen[static_cast<std::size_t>(e.row)]) {
          seen[static_cast<std::size_t>(e.row)] = true;
          ++reached;
          queue.push(e.row);
        }
  }
  return reached == basis->size();
}

RotationResult rotation_operator(const BasisPtr& basis) {
  const int n = basis->matrix().size();
  FockOperator x(basis, basis->m_max(), 0, 0);
  for (int i = 0; i < n; ++i)
    x += adjoint(build_creation(basis, Side::Left, i)) * build_creation(basis, Side::Right, i);

  IndexReport report;
  report.valid_up_to = x.valid_up_to();
  report.preserves_sectors = true;
  for (int j = 0; j < basis->size(); ++j)
    for (const auto& e : x.column(j))
      if (basis->length(e.row) != basis->length(j)) report.preserves_sectors = false;
  const Column& vac = x.column(0);
  report.vacuum_is_eigenvector = vac.size() == 1 && vac.front().row == 0;
  report.vacuum_eigenvalue = report.vacuum_is_eigenvector ? static_cast<int>(vac.front().value) : 0;
  for (int len = 0; len <= x.valid_up_to(); ++len) {
    const auto range = basis->sector(len);
    SectorIndex s;
    s.length = len;
    s.dimension = range.second - range.first;
    const int r = block_rank(x, range, range);
    s.kernel = s.dimension - r;
    s.cokernel = s.dimension - r;
    report.sectors.push_back(s);
  }
  return RotationResult{std::move(x), std::move(report)};
}

// ---------------------------------------------------------------------------

namespace {

void accumulate(FockVector& v, const Word& w, const ckalg::Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = v.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

} // namespace

FockVector apply_creation(const sft::ZeroOneMatrix& a, Side side, int k, const FockVector& v) {
  FockVector out;
  for (const auto& [w, c] : v) {
    Word next;
    if (side == Side::Left) {
      if (!w.empty() && !a(k, w.front())) continue;
      next.push_back(k);
      next.insert(next.end(), w.begin(), w.end());
    } else {
      if (!w.empty() && !a(w.back(), k)) continue;
      next = w;
      next.push_back(k);
    }
    accumulate(out, next, c);
  }
  return out;
}

FockVector apply_annihilation(const sft::ZeroOneMatrix&, Side side, int k, const FockVector& v) {
  FockVector out;
  for (const auto& [w, c] : v) {
    if (w.empty()) continue;
    if (side == Side::Left) {
      if (w.front() != k) continue;
      accumulate(out, Word(w.begin() + 1, w.end()), c);
    } else {
      if (w.back() != k) continue;
      accumulate(out, Word(w.begin(), w.end() - 1), c);
    }
  }
  return out;
}

FockVector evaluate(const ckalg::CKElement& x, const FockVector& v) {
  const auto& a = x.algebra()->matrix;
  FockVector out;
  for (const auto& [key, c] : x.terms()) {
    // (L_nu)^* = L_{nu_p}^* ... L_{nu_1}^*, so nu_1 is stripped first.
    FockVector cur = v;
    for (const int l : key.nu) cur = apply_annihilation(a, Side::Left, l, cur);
    for (auto it = key.mu.rbegin(); it != key.mu.rend(); ++it) cur = apply_creation(a, Side::Left, *it, cur);
    for (const auto& [w, cw] : cur) accumulate(out, w, cw * c);
  }
  return out;
}

} // namespace ckdual::fock
