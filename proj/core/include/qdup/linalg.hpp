#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qdup/field.hpp"

namespace qdup {

using Vec = std::vector<Scalar>;

Vec zero_vec(const Field& f, std::size_t n);
Vec unit_vec(const Field& f, std::size_t n, std::size_t i);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& s, const Vec& a);
bool is_zero(const Vec& v);
bool equal(const Vec& a, const Vec& b);
std::string to_string(const Vec& v);

/// Dense row-major matrix over an exact field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& f, std::size_t n);
  static Matrix from_rows(const Field& f, const std::vector<Vec>& rows);
  static Matrix from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& cols);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec column(std::size_t c) const;
  void set_column(std::size_t c, const Vec& v);
  Vec row(std::size_t r) const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  Vec apply(const Vec& v) const;
  Matrix transpose() const;

  bool operator==(const Matrix& o) const;
  bool is_zero() const;

  /// Reduced row echelon form; pivot columns are written to `pivots` when given.
  Matrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  std::size_t rank() const;
  std::optional<Matrix> inverse() const;
  /// Basis of {v : M v = 0}.
  std::vector<Vec> kernel() const;
  /// Some v with M v = b, if one exists.
  std::optional<Vec> solve(const Vec& b) const;

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

/// Incrementally maintained echelon basis of a subspace of k^n.
class EchelonSpan {
 public:
  EchelonSpan(Field f, std::size_t n) : field_(std::move(f)), n_(n) {}

  /// Adds v; returns false if it was already in the span.
  bool insert(const Vec& v);
  bool contains(const Vec& v) const;
  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }
  const std::vector<Vec>& basis() const { return rows_; }

 private:
  Vec reduce(Vec v) const;

  Field field_;
  std::size_t n_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace qdup
