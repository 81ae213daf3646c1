#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace modred {

// Dense matrix over the prime field F_p. Row-major, exact arithmetic.
// Degenerate shapes (0 rows and/or 0 columns) are first-class citizens:
// empty chain-complex degrees produce them constantly.
class FpMat {
 public:
  FpMat() : p_(2), rows_(0), cols_(0) {}
  FpMat(int p, int rows, int cols);
  FpMat(int p, int rows, int cols, std::vector<int> entries);

  static FpMat identity(int p, int n);
  static FpMat zero(int p, int rows, int cols) { return FpMat(p, rows, cols); }

  int p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
  void set(int i, int j, int v);

  bool operator==(const FpMat& o) const;
  bool operator!=(const FpMat& o) const { return !(*this == o); }

  FpMat mul(const FpMat& rhs) const;  // this * rhs
  FpMat add(const FpMat& rhs) const;
  FpMat sub(const FpMat& rhs) const;
  FpMat transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  // Stack blocks: [this | rhs] and [this ; rhs].
  FpMat hstack(const FpMat& rhs) const;
  FpMat vstack(const FpMat& rhs) const;

  int rank() const;
  // Reduced row echelon form; pivots receives the pivot column indices.
  FpMat rref(std::vector<int>* pivots = nullptr) const;

  // Columns form a basis of the null space {x : A x = 0}. The rows of the
  // result at the free-column indices form an identity block, so restricting
  // a vector of the null space to the free coordinates inverts the basis;
  // free_cols receives those indices when non-null.
  FpMat kernel_basis(std::vector<int>* free_cols = nullptr) const;

  // Particular solution of A x = b (b is rows x k), if any.
  std::optional<FpMat> solve(const FpMat& b) const;
  // Two-sided inverse of a square matrix, if any.
  std::optional<FpMat> inverse() const;

  bool injective() const { return rank() == cols_; }
  bool surjective() const { return rank() == rows_; }

  std::string encode() const;  // canonical row-major CSV, "" when empty

 private:
  int p_;
  int rows_, cols_;
  std::vector<uint8_t> a_;
};

// Quotient of F_p^v by the column space of B (v x k): Q (r x v) with
// ker Q = im B and a section S (v x r) with Q*S = I_r. Deterministic:
// the section embeds along the RREF free coordinates.
struct FpQuotient {
  FpMat Q;
  FpMat S;
};
FpQuotient column_space_quotient(const FpMat& B);

// Parses the encode() format back; needs the shape and the prime.
FpMat fpmat_decode(int p, int rows, int cols, const std::string& csv);

}  // namespace modred
