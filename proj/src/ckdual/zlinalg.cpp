#include "ckdual/zlinalg.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ckdual/error.hpp"

namespace ckdual::zlinalg {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = static_cast<int>(init.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(init.begin()->size());
  for (const auto& row : init) {
    if (static_cast<int>(row.size()) != cols_) throw Error(ErrorKind::InvalidArgument, "ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw Error(ErrorKind::InvalidArgument, "ragged matrix");
    for (int j = 0; j < c; ++j) {
      // mpz_class has no long long constructor
      m(i, j) = BigInt(std::to_string(rows[i][j]));
    }
  }
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& v) { return v == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "matrix product dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream out;
  out << '[';
  for (int i = 0; i < m.rows(); ++i) {
    out << (i ? ",[" : "[");
    for (int j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j).get_str();
    out << ']';
  }
  out << ']';
  return out.str();
}

namespace {

void swap_rows(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] -= q * row[src]
void sub_row(IntMatrix& m, int dst, int src, const BigInt& q) {
  for (int j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void sub_col(IntMatrix& m, int dst, int src, const BigInt& q) {
  for (int i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

// Floor division keeps |remainder| < |pivot|.
BigInt floor_quotient(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

struct Pos {
  int row;
  int col;
};

// Smallest nonzero absolute value in the trailing block, ties broken
// row-major.
std::optional<Pos> smallest_in_block(const IntMatrix& s, int t) {
  std::optional<Pos> best;
  for (int i = t; i < s.rows(); ++i)
    for (int j = t; j < s.cols(); ++j) {
      if (s(i, j) == 0) continue;
      if (!best || abs(s(i, j)) < abs(s(best->row, best->col))) best = Pos{i, j};
    }
  return best;
}

// Same rule restricted to row t and column t of the trailing block.
Pos smallest_in_cross(const IntMatrix& s, int t) {
  Pos best{t, t};
  auto consider = [&](int i, int j) {
    if (s(i, j) == 0) return;
    if (s(best.row, best.col) == 0 || abs(s(i, j)) < abs(s(best.row, best.col))) best = Pos{i, j};
  };
  for (int j = t; j < s.cols(); ++j) consider(t, j);
  for (int i = t + 1; i < s.rows(); ++i) consider(i, t);
  return best;
}

} // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm f{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  IntMatrix& s = f.S;
  const int limit = std::min(m.rows(), m.cols());
  for (int t = 0; t < limit; ++t) {
    auto pivot = smallest_in_block(s, t);
    if (!pivot) break;
    swap_rows(s, t, pivot->row);
    swap_rows(f.U, t, pivot->row);
    swap_cols(s, t, pivot->col);
    swap_cols(f.V, t, pivot->col);

    for (;;) {
      bool cleared = true;
      for (int i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        const BigInt q = floor_quotient(s(i, t), s(t, t));
        sub_row(s, i, t, q);
        sub_row(f.U, i, t, q);
        if (s(i, t) != 0) cleared = false;
      }
      for (int j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        const BigInt q = floor_quotient(s(t, j), s(t, t));
        sub_col(s, j, t, q);
        sub_col(f.V, j, t, q);
        if (s(t, j) != 0) cleared = false;
      }
      if (!cleared) {
        const Pos p = smallest_in_cross(s, t);
        swap_rows(s, t, p.row);
        swap_rows(f.U, t, p.row);
        swap_cols(s, t, p.col);
        swap_cols(f.V, t, p.col);
        continue;
      }
      // The pivot must divide the whole trailing block; otherwise fold the
      // offending row into row t and reduce again.
      std::optional<int> bad_row;
      for (int i = t + 1; i < s.rows() && !bad_row; ++i)
        for (int j = t + 1; j < s.cols(); ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      sub_row(s, t, *bad_row, -1);
      sub_row(f.U, t, *bad_row, -1);
    }
    if (s(t, t) < 0) {
      sub_row(s, t, t, 2);
      sub_row(f.U, t, t, 2);
    }
  }
  return f;
}

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> d;
  const int limit = std::min(S.rows(), S.cols());
  for (int i = 0; i < limit; ++i) d.push_back(S(i, i));
  return d;
}

int SmithForm::rank() const {
  int r = 0;
  for (const auto& d : diagonal())
    if (d != 0) ++r;
  return r;
}

namespace {

// Row-style Hermite normal form of a full-row-rank integer matrix: positive
// pivots, entries above each pivot reduced into [0, pivot).
IntMatrix hermite_rows(IntMatrix h) {
  int lead = 0;
  for (int col = 0; col < h.cols() && lead < h.rows(); ++col) {
    // Euclid down the column until a single nonzero entry remains.
    for (;;) {
      int best = -1;
      for (int i = lead; i < h.rows(); ++i)
        if (h(i, col) != 0 && (best < 0 || abs(h(i, col)) < abs(h(best, col)))) best = i;
      if (best < 0) break;
      swap_rows(h, lead, best);
      bool done = true;
      for (int i = lead + 1; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        sub_row(h, i, lead, floor_quotient(h(i, col), h(lead, col)));
        if (h(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (lead >= h.rows() || h(lead, col) == 0) continue;
    if (h(lead, col) < 0) sub_row(h, lead, lead, 2);
    for (int i = 0; i < lead; ++i) sub_row(h, i, lead, floor_quotient(h(i, col), h(lead, col)));
    ++lead;
  }
  return h;
}

} // namespace

std::vector<std::vector<BigInt>> kernel_basis(const IntMatrix& m) {
  const SmithForm f = smith_normal_form(m);
  const int r = f.rank();
  const int k = m.cols() - r;
  if (k == 0) return {};
  IntMatrix basis(k, m.cols());
  for (int b = 0; b < k; ++b)
    for (int i = 0; i < m.cols(); ++i) basis(b, i) = f.V(i, r + b);
  basis = hermite_rows(std::move(basis));
  std::vector<std::vector<BigInt>> out(static_cast<std::size_t>(k));
  for (int b = 0; b < k; ++b)
    for (int i = 0; i < m.cols(); ++i) out[b].push_back(basis(b, i));
  return out;
}

FGAbelianGroup cokernel(const IntMatrix& m, int ambient_rank) {
  if (ambient_rank != m.rows())
    throw Error(ErrorKind::InvalidArgument, "ambient rank " + std::to_string(ambient_rank) +
                                                " does not match the " + std::to_string(m.rows()) + " rows of M");
  const SmithForm f = smith_normal_form(m);
  FGAbelianGroup g;
  g.free_rank = m.rows() - f.rank();
  for (const auto& d : f.diagonal())
    if (d > 1) g.torsion.push_back(d);
  return g;
}

FGAbelianGroup free_group(int rank) { return FGAbelianGroup{rank, {}}; }

std::string to_string(const FGAbelianGroup& g) {
  if (g.is_trivial()) return "0";
  std::string out;
  if (g.free_rank > 0) out = g.free_rank == 1 ? "Z" : "Z^" + std::to_string(g.free_rank);
  for (const auto& d : g.torsion) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.get_str();
  }
  return out;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return 0;
      swap_rows(a, k, swap);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        BigInt num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

int rank(const IntMatrix& m) { return smith_normal_form(m).rank(); }

} // namespace ckdual::zlinalg
