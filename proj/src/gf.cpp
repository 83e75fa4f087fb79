#include "hotplug/gf.hpp"

#include <string>
#include <utility>

#include "hotplug/errors.hpp"

namespace hotplug::gf {

bool is_prime(std::uint32_t n) noexcept {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t next_prime_above(std::uint32_t n) {
  std::uint32_t p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

Field::Field(std::uint32_t q) : q_(q) {
  if (q > max_modulus) fail(Errc::config, "modulus " + std::to_string(q) + " exceeds 2^15");
  if (!is_prime(q)) fail(Errc::config, "modulus " + std::to_string(q) + " is not prime");
}

Sym Field::inv(Sym a) const {
  if (a % q_ == 0) fail(Errc::division_by_zero, "inverse of zero in GF(" + std::to_string(q_) + ")");
  return pow(a, q_ - 2);
}

Sym Field::pow(Sym a, std::uint64_t e) const noexcept {
  Sym result = 1 % q_;
  Sym base = a % q_;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Element::Element(std::int64_t value, std::uint32_t q) : v_(Field(q).reduce(value)), q_(q) {}

void Element::same_field(const Element& o) const {
  if (q_ != o.q_)
    fail(Errc::modulus_mismatch, "GF(" + std::to_string(q_) + ") vs GF(" + std::to_string(o.q_) + ")");
}

Element Element::operator+(const Element& o) const { same_field(o); return {Field(q_).add(v_, o.v_), q_}; }
Element Element::operator-(const Element& o) const { same_field(o); return {Field(q_).sub(v_, o.v_), q_}; }
Element Element::operator*(const Element& o) const { same_field(o); return {Field(q_).mul(v_, o.v_), q_}; }
Element Element::operator/(const Element& o) const { same_field(o); return {Field(q_).div(v_, o.v_), q_}; }
Element Element::operator-() const { return {Field(q_).neg(v_), q_}; }
Element Element::inverse() const { return {Field(q_).inv(v_), q_}; }

Matrix::Matrix(std::size_t rows, std::size_t cols, std::uint32_t q)
    : rows_(rows), cols_(cols), q_(Field(q).q()), a_(rows * cols, 0) {}

Matrix Matrix::identity(std::size_t n, std::uint32_t q) {
  Matrix m(n, n, q);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % q;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::uint32_t q) {
  Field f(q);
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols, q);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(Errc::config, "ragged matrix literal");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = f.reduce(rows[r][c]);
  }
  return m;
}

void Matrix::append_row(std::span<const Sym> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) fail(Errc::config, "row length mismatch");
  a_.insert(a_.end(), values.begin(), values.end());
  ++rows_;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix m(idx.size(), cols_, q_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    auto src = row(idx[i]);
    std::copy(src.begin(), src.end(), m.row(i).begin());
  }
  return m;
}

Matrix Matrix::row_range(std::size_t first, std::size_t count) const {
  Matrix m(count, cols_, q_);
  std::copy(a_.begin() + first * cols_, a_.begin() + (first + count) * cols_, m.a_.begin());
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_, q_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.modulus() != b.modulus()) fail(Errc::modulus_mismatch, "matrix product");
  if (a.cols() != b.rows()) fail(Errc::config, "matrix product shape mismatch");
  const std::uint32_t q = a.modulus();
  Matrix m(a.rows(), b.cols(), q);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += std::uint64_t{a(i, k)} * b(k, j);
      m(i, j) = static_cast<Sym>(acc % q);
    }
  }
  return m;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.modulus() != bottom.modulus()) fail(Errc::modulus_mismatch, "vstack");
  Matrix m = top;
  for (std::size_t r = 0; r < bottom.rows(); ++r) m.append_row(bottom.row(r));
  return m;
}

std::vector<Sym> mul_vec(const Matrix& a, std::span<const Sym> x) {
  if (x.size() != a.cols()) fail(Errc::config, "mul_vec shape mismatch");
  std::vector<Sym> y(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::uint64_t acc = 0;
    auto row = a.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) acc += std::uint64_t{row[c]} * x[c];
    y[r] = static_cast<Sym>(acc % a.modulus());
  }
  return y;
}

std::vector<Sym> vec_mul(std::span<const Sym> y, const Matrix& a) {
  if (y.size() != a.rows()) fail(Errc::config, "vec_mul shape mismatch");
  std::vector<std::uint64_t> acc(a.cols(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (y[r] == 0) continue;
    auto row = a.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) acc[c] += std::uint64_t{y[r]} * row[c];
  }
  std::vector<Sym> out(a.cols());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = static_cast<Sym>(acc[c] % a.modulus());
  return out;
}

namespace {

// Reduced row echelon form over the first `limit` columns; pivot is the first
// nonzero entry at or below the current row, scanning rows in index order.
std::vector<std::size_t> rref(Matrix& m, std::size_t limit) {
  const Field f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) std::swap_ranges(m.row(p).begin(), m.row(p).end(), m.row(r).begin());
    const Sym s = f.inv(m(r, c));
    for (auto& v : m.row(r)) v = f.mul(v, s);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Sym factor = m(i, c);
      auto src = m.row(r);
      auto dst = m.row(i);
      for (std::size_t j = c; j < m.cols(); ++j) dst[j] = f.sub(dst[j], f.mul(factor, src[j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Matrix& a) {
  Matrix m = a;
  return rref(m, m.cols()).size();
}

std::optional<std::vector<Sym>> try_solve(const Matrix& a, std::span<const Sym> b) {
  if (b.size() != a.rows()) fail(Errc::config, "solve shape mismatch");
  Matrix aug(a.rows(), a.cols() + 1, a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto src = a.row(r);
    std::copy(src.begin(), src.end(), aug.row(r).begin());
    aug(r, a.cols()) = b[r] % a.modulus();
  }
  auto pivots = rref(aug, a.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
    if (aug(r, a.cols()) != 0) return std::nullopt;
  std::vector<Sym> x(a.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
  return x;
}

std::vector<Sym> solve(const Matrix& a, std::span<const Sym> b) {
  auto x = try_solve(a, b);
  if (!x) fail(Errc::no_solution, "inconsistent linear system");
  return *x;
}

Matrix nullspace(const Matrix& a) {
  Matrix m = a;
  const Field f = m.field();
  auto pivots = rref(m, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix basis(0, m.cols(), m.modulus());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Sym> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(m(i, free));
    basis.append_row(v);
  }
  return basis;
}

Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) fail(Errc::singular, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n, a.modulus());
  for (std::size_t r = 0; r < n; ++r) {
    auto src = a.row(r);
    std::copy(src.begin(), src.end(), aug.row(r).begin());
    aug(r, n + r) = 1;
  }
  if (rref(aug, n).size() != n) fail(Errc::singular, "matrix is singular");
  Matrix inv(n, n, a.modulus());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

std::optional<std::vector<Sym>> row_combination(const Matrix& rows, std::span<const Sym> target) {
  return try_solve(rows.transpose(), target);
}

RowSpace::RowSpace(std::size_t dim, std::uint32_t q) : f_(q), dim_(dim) {}

std::vector<Sym> RowSpace::reduce(std::span<const Sym> v) const {
  if (v.size() != dim_) fail(Errc::config, "RowSpace dimension mismatch");
  std::vector<Sym> w(v.begin(), v.end());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Sym factor = w[pivots_[i]];
    if (factor == 0) continue;
    const auto& b = basis_[i];
    for (std::size_t j = 0; j < dim_; ++j)
      if (b[j]) w[j] = f_.sub(w[j], f_.mul(factor, b[j]));
  }
  return w;
}

bool RowSpace::contains(std::span<const Sym> v) const {
  auto w = reduce(v);
  for (auto x : w)
    if (x) return false;
  return true;
}

bool RowSpace::insert(std::span<const Sym> v) {
  auto w = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && w[p] == 0) ++p;
  if (p == dim_) return false;
  const Sym s = f_.inv(w[p]);
  for (auto& x : w) x = f_.mul(x, s);
  for (auto& b : basis_) {
    const Sym factor = b[p];
    if (factor == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      if (w[j]) b[j] = f_.sub(b[j], f_.mul(factor, w[j]));
  }
  basis_.push_back(std::move(w));
  pivots_.push_back(p);
  return true;
}

}  // namespace hotplug::gf
