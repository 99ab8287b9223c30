#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ckdual/ckalg.hpp"
#include "ckdual/sft.hpp"

namespace ckdual::fock {

using sft::Word;

// Orthonormal basis of the truncated restricted Fock space: the vacuum
// followed by all admissible words of length 1..m_max, length-major and
// lexicographic within a length.
class FockBasis {
public:
  FockBasis(sft::ZeroOneMatrix a, int m_max);

  const sft::ZeroOneMatrix& matrix() const { return matrix_; }
  int m_max() const { return m_max_; }
  int size() const { return static_cast<int>(words_.size()); }
  const Word& word(int index) const { return words_[static_cast<std::size_t>(index)]; }
  int length(int index) const { return static_cast<int>(words_[static_cast<std::size_t>(index)].size()); }
  std::optional<int> index_of(const Word& w) const;

  // Half-open index range of the words of length `len`.
  std::pair<int, int> sector(int len) const;

  // "Ω" for the vacuum, otherwise the 1-based letter string.
  std::string label(int index) const;

  bool operator==(const FockBasis& o) const { return matrix_ == o.matrix_ && m_max_ == o.m_max_; }

private:
  struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
  };

  sft::ZeroOneMatrix matrix_;
  int m_max_;
  std::vector<Word> words_;
  std::vector<int> sector_start_;
  std::unordered_map<Word, int, WordHash> index_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;

BasisPtr make_basis(const sft::ZeroOneMatrix& a, int m_max);

struct Entry {
  int row;
  long long value;
  bool operator==(const Entry&) const = default;
};

using Column = std::vector<Entry>;  // sorted by row, no zero values

// Exact sparse integer matrix on a truncated Fock basis.
//
// valid_up_to is the largest word length whose columns agree with the
// untruncated operator; [min_shift, max_shift] bounds how the operator changes
// word length. Both are propagated through sums, products and adjoints.
class FockOperator {
public:
  FockOperator(BasisPtr basis, int valid_up_to, int min_shift, int max_shift);

  static FockOperator zero(BasisPtr basis);
  static FockOperator identity(BasisPtr basis);

  const BasisPtr& basis() const { return basis_; }
  int valid_up_to() const { return valid_up_to_; }
  int min_shift() const { return min_shift_; }
  int max_shift() const { return max_shift_; }

  const Column& column(int j) const { return columns_[static_cast<std::size_t>(j)]; }
  void set_column(int j, Column col);
  long long entry(int row, int col) const;
  std::size_t nonzeros() const;
  long long max_abs_entry() const;
  bool is_zero() const;

  // Zero every column beyond `len`.
  FockOperator restricted_to(int len) const;

  // Same matrix entries (valid_up_to and shifts ignored).
  bool same_entries(const FockOperator& o) const { return columns_ == o.columns_; }

  FockOperator& operator+=(const FockOperator& o);
  FockOperator& operator-=(const FockOperator& o);
  FockOperator& operator*=(long long c);
  friend FockOperator operator+(FockOperator a, const FockOperator& b) { return a += b; }
  friend FockOperator operator-(FockOperator a, const FockOperator& b) { return a -= b; }
  friend FockOperator operator*(FockOperator a, long long c) { return a *= c; }
  friend FockOperator operator*(const FockOperator& x, const FockOperator& y);

private:
  void require_same_basis(const FockOperator& o) const;

  BasisPtr basis_;
  int valid_up_to_;
  int min_shift_;
  int max_shift_;
  std::vector<Column> columns_;
};

enum class Side { Left, Right };

// L_k (Side::Left) or R_k (Side::Right); k is 0-based.
FockOperator build_creation(const BasisPtr& basis, Side side, int k);

// Matrix transpose; the Fock basis is orthonormal and entries are real.
FockOperator adjoint(const FockOperator& op);

FockOperator vacuum_projection(const BasisPtr& basis);

FockOperator commutator(const FockOperator& x, const FockOperator& y);

// Rank over Q of the block with the given row/column index ranges.
int block_rank(const FockOperator& op, std::pair<int, int> rows, std::pair<int, int> cols);
int exact_rank(const FockOperator& op);

// ---------------------------------------------------------------------------
// Relation checking.

struct ColumnDefect {
  std::string column;                     // word label of the column
  int column_length = 0;
  std::map<std::string, long long> delta;  // row label -> lhs - rhs
  bool operator==(const ColumnDefect&) const = default;
};

struct RelationReport {
  std::string relation;  // "i", "ii", "iii", "iv"
  int k = 0;             // 1-based, 0 when unused
  int l = 0;
  bool holds = false;
  int valid_up_to = 0;
  std::vector<ColumnDefect> defects;
  bool operator==(const RelationReport&) const = default;
};

// Compares lhs and rhs on columns inside both valid domains.
RelationReport verify_relation(const std::string& relation, const FockOperator& lhs, const FockOperator& rhs);

// Items i)-iv) for every k (and l). `which` is "i", "ii", "iii", "iv" or
// "all". Reports are sorted by (relation, k, l).
std::vector<RelationReport> verify_creation_relations(const BasisPtr& basis, const std::string& which);

// True iff the closure of {Ω} under L_k, R_k and their adjoints spans the
// truncated space.
bool orbit_spans(const BasisPtr& basis);

struct SectorIndex {
  int length = 0;
  int dimension = 0;
  int kernel = 0;
  int cokernel = 0;
  bool operator==(const SectorIndex&) const = default;
};

struct IndexReport {
  int vacuum_eigenvalue = 0;       // X Ω = vacuum_eigenvalue Ω
  bool vacuum_is_eigenvector = false;
  bool preserves_sectors = false;
  int valid_up_to = 0;
  std::vector<SectorIndex> sectors;  // lengths 0..valid_up_to
  bool operator==(const IndexReport&) const = default;
};

struct RotationResult {
  FockOperator op;
  IndexReport report;
};

// X = sum_i (L_i)^* R_i with its per-sector kernel/cokernel dimensions.
RotationResult rotation_operator(const BasisPtr& basis);

// ---------------------------------------------------------------------------
// Untruncated action on finitely supported vectors. Used as an independent
// model of O_A: s_k acts as L_k, which satisfies the Cuntz-Krieger relations
// away from the vacuum.

using FockVector = std::map<Word, ckalg::Rational>;

FockVector apply_creation(const sft::ZeroOneMatrix& a, Side side, int k, const FockVector& v);
FockVector apply_annihilation(const sft::ZeroOneMatrix& a, Side side, int k, const FockVector& v);

// sum c L_mu (L_nu)^* v, letter by letter.
FockVector evaluate(const ckalg::CKElement& x, const FockVector& v);

} // namespace ckdual::fock
