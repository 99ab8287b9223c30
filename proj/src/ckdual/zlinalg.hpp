#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace ckdual::zlinalg {

using BigInt = mpz_class;

// Dense rectangular matrix of arbitrary precision integers.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init);
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  BigInt& operator()(int i, int j) { return data_[index(i, j)]; }
  const BigInt& operator()(int i, int j) const { return data_[index(i, j)]; }

  IntMatrix transposed() const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  bool operator==(const IntMatrix& other) const;

private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * cols_ + j); }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<BigInt> data_;
};

std::string to_string(const IntMatrix& m);

// U * M * V == S, U and V unimodular, S diagonal with d_1 | d_2 | ... and
// nonnegative entries.
struct SmithForm {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;

  std::vector<BigInt> diagonal() const;
  int rank() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

// Z-basis of {v : M v = 0}, in a canonical (row echelon) form so the output
// depends only on the lattice.
std::vector<std::vector<BigInt>> kernel_basis(const IntMatrix& m);

// Finitely generated abelian group Z^free_rank + Z/d_1 + ... with
// 2 <= d_1 | d_2 | ...
struct FGAbelianGroup {
  int free_rank = 0;
  std::vector<BigInt> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const FGAbelianGroup&) const = default;
};

// Z^rows / image(M). `ambient_rank` must equal M.rows().
FGAbelianGroup cokernel(const IntMatrix& m, int ambient_rank);

// Free abelian group of the given rank.
FGAbelianGroup free_group(int rank);

// "0", "Z", "Z^2 + Z/2 + Z/6", ...
std::string to_string(const FGAbelianGroup& g);

BigInt determinant(const IntMatrix& m);
int rank(const IntMatrix& m);

} // namespace ckdual::zlinalg
