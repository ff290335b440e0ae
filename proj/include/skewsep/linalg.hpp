#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "skewsep/zmod.hpp"

namespace skewsep {

// Dense row-major matrix over Z/c. Entries are expected to be reduced.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Int> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Int> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Vec column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const Int> v);

  Matrix transpose() const;
  // Appends the rows of `below`; column counts must agree.
  void append_rows(const Matrix& below);

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

Matrix multiply(const ZMod& zm, const Matrix& a, const Matrix& b);
Vec apply(const ZMod& zm, const Matrix& a, std::span<const Int> v);
Matrix subtract(const ZMod& zm, const Matrix& a, const Matrix& b);

// Matrix whose j-th column is fn(e_j) for the unit vectors of (Z/c)^n_in.
Matrix matrix_of_linear_map(std::size_t n_in, std::size_t n_out,
                            const std::function<Vec(const Vec&)>& fn);

// Howell form of the row span of `rows` (each of length `cols`). Nonzero rows
// only, ordered by pivot column; each pivot divides c, entries above a pivot
// are reduced into [0, pivot), and every span element whose first j entries
// vanish is a combination of the rows with pivot column >= j.
std::vector<Vec> howell_form(const ZMod& zm, std::vector<Vec> rows, std::size_t cols);

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::uint64_t cap)
      : std::runtime_error(what + " exceeds the enumeration cap of " + std::to_string(cap)),
        cap_(cap) {}
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t cap_;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 65536;

// A Z/c-submodule of (Z/c)^dim held in Howell form, so equal submodules have
// identical representations.
class Submodule {
 public:
  Submodule(const ZMod& zm, std::size_t dim) : zm_(zm), dim_(dim) {}
  static Submodule span(const ZMod& zm, std::size_t dim, std::vector<Vec> generators);
  static Submodule full(const ZMod& zm, std::size_t dim);

  const ZMod& zmod() const { return zm_; }
  std::size_t ambient_dim() const { return dim_; }
  const std::vector<Vec>& rows() const { return rows_; }
  bool is_zero() const { return rows_.empty(); }

  // Canonical representative of v modulo this submodule. Among v + S it is
  // the lexicographically least coordinate vector.
  Vec reduce(std::span<const Int> v) const;
  bool contains(std::span<const Int> v) const;
  bool contains(const Submodule& other) const;

  // Number of elements; throws std::overflow_error past 2^63.
  std::uint64_t order() const;

  // Each element exactly once, in a fixed order.
  void for_each(std::uint64_t cap, const std::function<void(const Vec&)>& visit) const;
  std::vector<Vec> elements(std::uint64_t cap = kDefaultEnumerationCap) const;

  Submodule intersect(const Submodule& other) const;
  Submodule sum(const Submodule& other) const;

  bool operator==(const Submodule& o) const {
    return zm_ == o.zm_ && dim_ == o.dim_ && rows_ == o.rows_;
  }

 private:
  ZMod zm_;
  std::size_t dim_;
  std::vector<Vec> rows_;
};

struct LinearSolution {
  Vec particular;  // lexicographically least solution
  Submodule kernel;
};

// All x with M x = b over Z/c. Returns nullopt when the system is inconsistent.
std::optional<LinearSolution> solve_linear(const ZMod& zm, const Matrix& m, std::span<const Int> b);

// {x : M x = 0}
Submodule kernel(const ZMod& zm, const Matrix& m);

// Z/c-span of the columns of M.
Submodule column_span(const ZMod& zm, const Matrix& m);

}  // namespace skewsep
