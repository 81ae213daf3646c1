#include "modred/fpmat.hpp"

#include <algorithm>
#include <stdexcept>

#include "modred/common.hpp"

namespace modred {

namespace {
int norm_mod(long v, int p) {
  long r = v % p;
  if (r < 0) r += p;
  return int(r);
}
// Multiplicative inverse in F_p, p prime.
int inv_mod(int v, int p) {
  int r = 1;
  int b = v % p;
  int e = p - 2;
  while (e) {
    if (e & 1) r = int(long(r) * b % p);
    b = int(long(b) * b % p);
    e >>= 1;
  }
  return r;
}
}  // namespace

FpMat::FpMat(int p, int rows, int cols) : p_(p), rows_(rows), cols_(cols) {
  if (p < 2 || rows < 0 || cols < 0) throw ValidationError("bad matrix shape");
  a_.assign(size_t(rows) * cols, 0);
}

FpMat::FpMat(int p, int rows, int cols, std::vector<int> entries) : FpMat(p, rows, cols) {
  if (entries.size() != size_t(rows) * cols)
    throw ValidationError("matrix entry count mismatch");
  for (size_t i = 0; i < entries.size(); ++i) a_[i] = uint8_t(norm_mod(entries[i], p));
}

FpMat FpMat::identity(int p, int n) {
  FpMat m(p, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void FpMat::set(int i, int j, int v) { a_[size_t(i) * cols_ + j] = uint8_t(norm_mod(v, p_)); }

bool FpMat::operator==(const FpMat& o) const {
  return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

FpMat FpMat::mul(const FpMat& rhs) const {
  if (p_ != rhs.p_ || cols_ != rhs.rows_) throw ValidationError("matrix product shape mismatch");
  FpMat out(p_, rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      int v = at(i, k);
      if (!v) continue;
      for (int j = 0; j < rhs.cols_; ++j)
        out.a_[size_t(i) * rhs.cols_ + j] =
            uint8_t((out.a_[size_t(i) * rhs.cols_ + j] + v * rhs.at(k, j)) % p_);
    }
  return out;
}

FpMat FpMat::add(const FpMat& rhs) const {
  if (p_ != rhs.p_ || rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw ValidationError("matrix sum shape mismatch");
  FpMat out(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = uint8_t((a_[i] + rhs.a_[i]) % p_);
  return out;
}

FpMat FpMat::sub(const FpMat& rhs) const {
  if (p_ != rhs.p_ || rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw ValidationError("matrix difference shape mismatch");
  FpMat out(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = uint8_t(norm_mod(a_[i] - rhs.a_[i], p_));
  return out;
}

FpMat FpMat::transpose() const {
  FpMat out(p_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
  return out;
}

bool FpMat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](uint8_t v) { return v == 0; });
}

bool FpMat::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(p_, rows_);
}

FpMat FpMat::hstack(const FpMat& rhs) const {
  if (p_ != rhs.p_ || rows_ != rhs.rows_) throw ValidationError("hstack shape mismatch");
  FpMat out(p_, rows_, cols_ + rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out.set(i, j, at(i, j));
    for (int j = 0; j < rhs.cols_; ++j) out.set(i, cols_ + j, rhs.at(i, j));
  }
  return out;
}

FpMat FpMat::vstack(const FpMat& rhs) const {
  if (p_ != rhs.p_ || cols_ != rhs.cols_) throw ValidationError("vstack shape mismatch");
  FpMat out(p_, rows_ + rhs.rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(i, j, at(i, j));
  for (int i = 0; i < rhs.rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(rows_ + i, j, rhs.at(i, j));
  return out;
}

FpMat FpMat::rref(std::vector<int>* pivots) const {
  FpMat m = *this;
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int sel = -1;
    for (int i = r; i < rows_; ++i)
      if (m.at(i, c)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < cols_; ++j) {
        int t = m.at(r, j);
        m.set(r, j, m.at(sel, j));
        m.set(sel, j, t);
      }
    int iv = inv_mod(m.at(r, c), p_);
    for (int j = 0; j < cols_; ++j) m.set(r, j, m.at(r, j) * iv);
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      int f = m.at(i, c);
      if (!f) continue;
      for (int j = 0; j < cols_; ++j) m.set(i, j, m.at(i, j) - f * m.at(r, j));
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = piv;
  return m;
}

int FpMat::rank() const {
  std::vector<int> piv;
  rref(&piv);
  return int(piv.size());
}

FpMat FpMat::kernel_basis(std::vector<int>* free_cols) const {
  std::vector<int> piv;
  FpMat R = rref(&piv);
  std::vector<bool> is_piv(cols_, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<int> free;
  for (int c = 0; c < cols_; ++c)
    if (!is_piv[c]) free.push_back(c);
  FpMat K(p_, cols_, int(free.size()));
  for (size_t fi = 0; fi < free.size(); ++fi) {
    int f = free[fi];
    K.set(f, int(fi), 1);
    for (size_t r = 0; r < piv.size(); ++r) K.set(piv[r], int(fi), -R.at(int(r), f));
  }
  if (free_cols) *free_cols = free;
  return K;
}

std::optional<FpMat> FpMat::solve(const FpMat& b) const {
  if (b.rows() != rows_) throw ValidationError("solve shape mismatch");
  FpMat aug = hstack(b);
  std::vector<int> piv;
  FpMat R = aug.rref(&piv);
  // Inconsistent if a pivot lands in the augmented block.
  for (int c : piv)
    if (c >= cols_) return std::nullopt;
  FpMat x(p_, cols_, b.cols());
  for (size_t r = 0; r < piv.size(); ++r)
    for (int j = 0; j < b.cols(); ++j) x.set(piv[r], j, R.at(int(r), cols_ + j));
  return x;
}

std::optional<FpMat> FpMat::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  auto x = solve(identity(p_, rows_));
  if (!x) return std::nullopt;
  if (!mul(*x).is_identity() || !x->mul(*this).is_identity()) return std::nullopt;
  return x;
}

std::string FpMat::encode() const {
  std::string out;
  for (size_t i = 0; i < a_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(int(a_[i]));
  }
  return out;
}

FpQuotient column_space_quotient(const FpMat& B) {
  const int p = B.p();
  const int v = B.rows();
  // Rows of R span the column space of B inside F_p^v.
  std::vector<int> piv;
  FpMat R = B.transpose().rref(&piv);
  std::vector<bool> is_piv(v, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<int> free;
  for (int c = 0; c < v; ++c)
    if (!is_piv[c]) free.push_back(c);
  const int r = int(free.size());
  // Q: reduce by the RREF rows, then restrict to free coordinates.
  FpMat Q(p, r, v);
  for (int c = 0; c < v; ++c) {
    // Image of the standard basis vector e_c.
    std::vector<int> x(v, 0);
    x[c] = 1;
    for (size_t row = 0; row < piv.size(); ++row) {
      int coef = x[piv[row]];
      if (!coef) continue;
      for (int j = 0; j < v; ++j) x[j] = ((x[j] - coef * R.at(int(row), j)) % p + p) % p;
    }
    for (int fi = 0; fi < r; ++fi) Q.set(fi, c, x[free[fi]]);
  }
  FpMat S(p, v, r);
  for (int fi = 0; fi < r; ++fi) S.set(free[fi], fi, 1);
  return {Q, S};
}

FpMat fpmat_decode(int p, int rows, int cols, const std::string& csv) {
  std::vector<int> entries;
  if (!csv.empty()) {
    size_t pos = 0;
    while (pos <= csv.size()) {
      size_t nxt = csv.find(',', pos);
      if (nxt == std::string::npos) nxt = csv.size();
      entries.push_back(std::stoi(csv.substr(pos, nxt - pos)));
      pos = nxt + 1;
      if (nxt == csv.size()) break;
    }
  }
  return FpMat(p, rows, cols, std::move(entries));
}

}  // namespace modred
