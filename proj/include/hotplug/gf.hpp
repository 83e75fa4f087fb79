#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hotplug::gf {

using Sym = std::uint32_t;

// Products of two reduced symbols stay below 2^30, so plain 32-bit math is exact.
inline constexpr std::uint32_t max_modulus = 1u << 15;

bool is_prime(std::uint32_t n) noexcept;
// Smallest prime strictly greater than n.
std::uint32_t next_prime_above(std::uint32_t n);

class Field {
 public:
  explicit Field(std::uint32_t q);

  std::uint32_t q() const noexcept { return q_; }
  Sym reduce(std::int64_t x) const noexcept {
    std::int64_t r = x % static_cast<std::int64_t>(q_);
    return static_cast<Sym>(r < 0 ? r + q_ : r);
  }
  Sym add(Sym a, Sym b) const noexcept { Sym s = a + b; return s >= q_ ? s - q_ : s; }
  Sym sub(Sym a, Sym b) const noexcept { return a >= b ? a - b : a + q_ - b; }
  Sym neg(Sym a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Sym mul(Sym a, Sym b) const noexcept { return (a * b) % q_; }
  Sym inv(Sym a) const;
  Sym div(Sym a, Sym b) const { return mul(a, inv(b)); }
  Sym pow(Sym a, std::uint64_t e) const noexcept;

  bool operator==(const Field&) const = default;

 private:
  std::uint32_t q_;
};

class Element {
 public:
  Element(std::int64_t value, std::uint32_t q);

  Sym value() const noexcept { return v_; }
  std::uint32_t modulus() const noexcept { return q_; }

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element operator/(const Element& o) const;
  Element operator-() const;
  Element inverse() const;

  bool operator==(const Element&) const = default;

 private:
  void same_field(const Element& o) const;
  Sym v_;
  std::uint32_t q_;
};

// Dense row-major matrix over GF(q).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, std::uint32_t q);

  static Matrix identity(std::size_t n, std::uint32_t q);
  static Matrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::uint32_t q);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t modulus() const noexcept { return q_; }
  Field field() const { return Field(q_); }

  Sym& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  Sym operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::span<Sym> row(std::size_t r) { return {a_.data() + r * cols_, cols_}; }
  std::span<const Sym> row(std::size_t r) const { return {a_.data() + r * cols_, cols_}; }
  std::vector<Sym> row_vector(std::size_t r) const { auto s = row(r); return {s.begin(), s.end()}; }

  void append_row(std::span<const Sym> values);
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix row_range(std::size_t first, std::size_t count) const;
  Matrix transpose() const;
  const std::vector<Sym>& data() const noexcept { return a_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint32_t q_ = 2;
  std::vector<Sym> a_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& top, const Matrix& bottom);
// A·x
std::vector<Sym> mul_vec(const Matrix& a, std::span<const Sym> x);
// yᵀ·A
std::vector<Sym> vec_mul(std::span<const Sym> y, const Matrix& a);

std::size_t rank(const Matrix& a);
std::optional<std::vector<Sym>> try_solve(const Matrix& a, std::span<const Sym> b);
// Throws Errc::no_solution when A·x = b is inconsistent.
std::vector<Sym> solve(const Matrix& a, std::span<const Sym> b);
// Right nullspace; one basis vector per returned row.
Matrix nullspace(const Matrix& a);
// Throws Errc::singular.
Matrix inverse(const Matrix& a);
// y with yᵀ·rows = target, if target lies in the row space.
std::optional<std::vector<Sym>> row_combination(const Matrix& rows, std::span<const Sym> target);

// Incrementally maintained row space in reduced echelon form.
class RowSpace {
 public:
  RowSpace(std::size_t dim, std::uint32_t q);

  std::size_t rank() const noexcept { return basis_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  bool contains(std::span<const Sym> v) const;
  // Adds v; returns true iff the rank grew.
  bool insert(std::span<const Sym> v);

 private:
  std::vector<Sym> reduce(std::span<const Sym> v) const;
  Field f_;
  std::size_t dim_;
  std::vector<std::vector<Sym>> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace hotplug::gf
