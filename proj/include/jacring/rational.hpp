#pragma once

// Exact rational scalars and the small amount of linear algebra over Q
// that the rest of the engine needs: sparse vectors, row reduction,
// Vandermonde solves and incremental subspace bookkeeping.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jacring/error.hpp"

namespace jacring {

/// Exact rational number, always in lowest terms with positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rat(long n, long d) {
    if (d == 0) throw RangeError("Rat: zero denominator");
    q_ = mpq_class(n, d);
    q_.canonicalize();
  }
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "a" or "a/b" (optional leading sign).
  static Rat parse(std::string_view text) {
    mpq_class q;
    if (text.empty() || q.set_str(std::string(text), 10) != 0) {
      throw RangeError("Rat: cannot parse '" + std::string(text) + "'");
    }
    if (q.get_den() == 0) throw RangeError("Rat: zero denominator");
    q.canonicalize();
    return Rat(std::move(q));
  }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }
  const mpq_class& raw() const { return q_; }

  /// "a" for integers, "a/b" otherwise.
  std::string str() const {
    return is_integer() ? q_.get_num().get_str() : q_.get_str();
  }
  /// Always "num/den".
  std::string frac_str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw RangeError("Rat: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
  }

 private:
  mpq_class q_{0};
};

/// Integer power with a signed base; exponent must be non-negative.
inline Rat ipow(const Rat& base, unsigned exp) {
  mpq_class out(1);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exp);
  out = mpq_class(num, den);
  return Rat(out);
}

inline Rat factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rat(mpq_class(f));
}

inline Rat binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rat(mpq_class(b));
}

/// Sparse vector over Q: index -> nonzero coefficient.
using RatVector = std::map<std::size_t, Rat>;

inline void axpy(RatVector& y, const Rat& a, const RatVector& x) {
  if (a.is_zero()) return;
  for (const auto& [i, v] : x) {
    auto [it, inserted] = y.try_emplace(i, a * v);
    if (!inserted) {
      it->second += a * v;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

inline RatVector scaled(const RatVector& x, const Rat& a) {
  RatVector out;
  if (a.is_zero()) return out;
  for (const auto& [i, v] : x) out.emplace(i, a * v);
  return out;
}

/// Sparse row-major matrix over Q with no stored zeros.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static RatMatrix from_dense(const std::vector<std::vector<Rat>>& dense) {
    std::size_t cols = dense.empty() ? 0 : dense.front().size();
    RatMatrix m(dense.size(), cols);
    for (std::size_t r = 0; r < dense.size(); ++r) {
      if (dense[r].size() != cols) throw ShapeError("RatMatrix: ragged rows");
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, dense[r][c]);
    }
    return m;
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Rat(1));
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  Rat at(std::size_t r, std::size_t c) const {
    check(r, c);
    auto it = rows_[r].find(c);
    return it == rows_[r].end() ? Rat(0) : it->second;
  }

  void set(std::size_t r, std::size_t c, const Rat& v) {
    check(r, c);
    if (v.is_zero()) {
      rows_[r].erase(c);
    } else {
      rows_[r][c] = v;
    }
  }

  const RatVector& row(std::size_t r) const { return rows_.at(r); }
  RatVector& row(std::size_t r) { return rows_.at(r); }

  void append_row(RatVector v) {
    if (!v.empty() && v.rbegin()->first >= cols_) {
      throw ShapeError("RatMatrix: row index out of range");
    }
    rows_.push_back(std::move(v));
  }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_.size() || c >= cols_) {
      throw ShapeError("RatMatrix: index out of range");
    }
  }

  std::size_t cols_ = 0;
  std::vector<RatVector> rows_;
};

struct RrefResult {
  RatMatrix matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form by Gauss-Jordan elimination. Zero rows are moved
/// to the bottom.
inline RrefResult rref(const RatMatrix& m) {
  std::vector<RatVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));

  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t col = 0; col < m.cols() && next < rows.size(); ++col) {
    std::size_t found = rows.size();
    for (std::size_t r = next; r < rows.size(); ++r) {
      if (rows[r].count(col)) {
        found = r;
        break;
      }
    }
    if (found == rows.size()) continue;
    std::swap(rows[next], rows[found]);
    Rat inv = Rat(1) / rows[next].at(col);
    rows[next] = scaled(rows[next], inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next) continue;
      auto it = rows[r].find(col);
      if (it == rows[r].end()) continue;
      Rat f = -it->second;
      axpy(rows[r], f, rows[next]);
    }
    pivots.push_back(col);
    ++next;
  }

  RrefResult out;
  out.matrix = RatMatrix(0, m.cols());
  for (std::size_t r = 0; r < next; ++r) out.matrix.append_row(rows[r]);
  for (std::size_t r = next; r < rows.size(); ++r) out.matrix.append_row({});
  out.rank = next;
  out.pivots = std::move(pivots);
  return out;
}

/// Inverse of a square matrix; throws DegenerateBasisError when singular.
inline RatMatrix inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw ShapeError("inverse: matrix not square");
  RatMatrix aug(0, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    RatVector row = m.row(r);
    row.emplace(n + r, Rat(1));
    aug.append_row(std::move(row));
  }
  RrefResult red = rref(aug);
  if (red.rank < n || (n > 0 && red.pivots[n - 1] != n - 1)) {
    throw DegenerateBasisError("inverse: singular matrix");
  }
  RatMatrix inv(0, n);
  for (std::size_t r = 0; r < n; ++r) {
    RatVector row;
    for (const auto& [c, v] : red.matrix.row(r)) {
      if (c >= n) row.emplace(c - n, v);
    }
    inv.append_row(std::move(row));
  }
  return inv;
}

/// Solves values_j = sum_k samples_j^{exponents_k} * c_k for the vectors c_k.
/// The system must be square.
inline std::vector<RatVector> solve_vandermonde(
    const std::vector<long>& samples, const std::vector<unsigned>& exponents,
    const std::vector<RatVector>& values) {
  if (samples.size() != values.size()) {
    throw ShapeError("solve_vandermonde: samples/values length mismatch");
  }
  if (samples.size() != exponents.size()) {
    throw ShapeError("solve_vandermonde: need one sample per exponent");
  }
  for (long s : samples) {
    if (s == 0) throw RangeError("solve_vandermonde: zero sample");
  }
  const std::size_t n = samples.size();
  RatMatrix v(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      v.set(j, k, ipow(Rat(samples[j]), exponents[k]));
    }
  }
  RatMatrix inv;
  try {
    inv = inverse(v);
  } catch (const DegenerateBasisError&) {
    throw DegenerateBasisError(
        "solve_vandermonde: singular system (repeated samples or exponents)");
  }
  std::vector<RatVector> comps(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& [j, coeff] : inv.row(k)) axpy(comps[k], coeff, values[j]);
  }
  return comps;
}

/// Incrementally maintained subspace of Q^dim, stored in echelon form with
/// unit pivots.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0) : dim_(ambient_dim) {}

  std::size_t ambient_dim() const { return dim_; }
  std::size_t dim() const { return rows_.size(); }

  /// Residual of v after elimination against the stored rows.
  RatVector reduce(RatVector v) const {
    check(v);
    for (const auto& [pivot, row] : rows_) {
      if (v.empty() || v.rbegin()->first < pivot) break;
      auto it = v.find(pivot);
      if (it == v.end()) continue;
      Rat f = -it->second;
      axpy(v, f, row);
    }
    return v;
  }

  bool contains(const RatVector& v) const { return reduce(v).empty(); }

  /// Adds v; returns true iff the dimension grew.
  bool insert(const RatVector& v) {
    RatVector r = reduce(v);
    if (r.empty()) return false;
    Rat inv = Rat(1) / r.begin()->second;
    std::size_t pivot = r.begin()->first;
    rows_.emplace(pivot, scaled(r, inv));
    return true;
  }

  std::vector<RatVector> basis() const {
    std::vector<RatVector> out;
    out.reserve(rows_.size());
    for (const auto& [p, row] : rows_) out.push_back(row);
    return out;
  }

 private:
  void check(const RatVector& v) const {
    if (!v.empty() && v.rbegin()->first >= dim_) {
      throw ShapeError("Subspace: vector outside ambient dimension");
    }
  }

  std::size_t dim_;
  std::map<std::size_t, RatVector> rows_;
};

inline Subspace subspace_closure(std::size_t ambient_dim,
                                 const std::vector<RatVector>& vectors) {
  Subspace s(ambient_dim);
  for (const auto& v : vectors) s.insert(v);
  return s;
}

}  // namespace jacring
