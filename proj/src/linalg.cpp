#include "skewsep/linalg.hpp"

#include <algorithm>
#include <limits>

namespace skewsep {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Vec Matrix::column(std::size_t j) const {
  Vec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

void Matrix::set_column(std::size_t j, std::span<const Int> v) {
  if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void Matrix::append_rows(const Matrix& below) {
  if (rows_ == 0 && cols_ == 0) cols_ = below.cols_;
  if (below.cols_ != cols_) throw std::invalid_argument("column count mismatch");
  data_.insert(data_.end(), below.data_.begin(), below.data_.end());
  rows_ += below.rows_;
}

Matrix multiply(const ZMod& zm, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Int ail = a(i, l);
      if (ail == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = zm.add(out(i, j), ail * b(l, j));
    }
  return out;
}

Vec apply(const ZMod& zm, const Matrix& a, std::span<const Int> v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  Vec out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc = zm.add(acc, a(i, j) * v[j]);
    out[i] = acc;
  }
  return out;
}

Matrix subtract(const ZMod& zm, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = zm.sub(a(i, j), b(i, j));
  return out;
}

Matrix matrix_of_linear_map(std::size_t n_in, std::size_t n_out,
                            const std::function<Vec(const Vec&)>& fn) {
  Matrix m(n_out, n_in);
  Vec unit(n_in, 0);
  for (std::size_t j = 0; j < n_in; ++j) {
    unit[j] = 1;
    m.set_column(j, fn(unit));
    unit[j] = 0;
  }
  return m;
}

namespace {

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

// row_a <- s*row_a + t*row_b, row_b <- u*row_a + v*row_b, from column `from`.
void combine_rows(const ZMod& zm, Vec& ra, Vec& rb, Int s, Int t, Int u, Int v, std::size_t from) {
  s = zm.reduce(s);
  t = zm.reduce(t);
  u = zm.reduce(u);
  v = zm.reduce(v);
  for (std::size_t k = from; k < ra.size(); ++k) {
    const Int a = ra[k], b = rb[k];
    ra[k] = zm.add(zm.mul(s, a), zm.mul(t, b));
    rb[k] = zm.add(zm.mul(u, a), zm.mul(v, b));
  }
}

std::size_t pivot_column(const Vec& row) {
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j] != 0) return j;
  return row.size();
}

}  // namespace

std::vector<Vec> howell_form(const ZMod& zm, std::vector<Vec> rows, std::size_t cols) {
  std::vector<Vec> work;
  work.reserve(rows.size() + cols);
  for (auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("generator length mismatch");
    r = zm.reduce(std::move(r));
    if (!is_zero_vec(r)) work.push_back(std::move(r));
  }

  std::size_t pr = 0;
  for (std::size_t j = 0; j < cols && pr < work.size(); ++j) {
    for (std::size_t i = pr + 1; i < work.size(); ++i) {
      const Int b = work[i][j];
      if (b == 0) continue;
      const Int a = work[pr][j];
      const auto [g, s, t] = gcdex(a, b);
      // Determinant s*(a/g) + t*(b/g) = 1, so the transform is invertible.
      combine_rows(zm, work[pr], work[i], s, t, -(b / g), a / g, j);
    }
    if (work[pr][j] == 0) continue;

    const Int unit = zm.normalizing_unit(work[pr][j]);
    for (std::size_t k = j; k < cols; ++k) work[pr][k] = zm.mul(work[pr][k], unit);
    const Int p = work[pr][j];

    for (std::size_t i = 0; i < pr; ++i) {
      const Int q = work[i][j] / p;
      if (q == 0) continue;
      for (std::size_t k = j; k < cols; ++k) work[i][k] = zm.sub(work[i][k], zm.mul(q, work[pr][k]));
    }

    // Annihilator multiple of the pivot row keeps the Howell property.
    const Int ann = zm.modulus() / p;
    if (ann != zm.modulus()) {
      Vec extra(cols, 0);
      for (std::size_t k = j + 1; k < cols; ++k) extra[k] = zm.mul(ann, work[pr][k]);
      if (!is_zero_vec(extra)) work.push_back(std::move(extra));
    }
    ++pr;
  }
  work.resize(pr);
  return work;
}

Submodule Submodule::span(const ZMod& zm, std::size_t dim, std::vector<Vec> generators) {
  Submodule s(zm, dim);
  s.rows_ = howell_form(zm, std::move(generators), dim);
  return s;
}

Submodule Submodule::full(const ZMod& zm, std::size_t dim) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < dim; ++i) {
    Vec e(dim, 0);
    e[i] = 1;
    gens.push_back(std::move(e));
  }
  return span(zm, dim, std::move(gens));
}

Vec Submodule::reduce(std::span<const Int> v) const {
  if (v.size() != dim_) throw std::invalid_argument("vector length does not match submodule");
  Vec out(v.begin(), v.end());
  out = zm_.reduce(std::move(out));
  for (const auto& row : rows_) {
    const std::size_t pc = pivot_column(row);
    const Int q = out[pc] / row[pc];
    if (q == 0) continue;
    for (std::size_t k = pc; k < dim_; ++k) out[k] = zm_.sub(out[k], zm_.mul(q, row[k]));
  }
  return out;
}

bool Submodule::contains(std::span<const Int> v) const { return is_zero_vec(reduce(v)); }

bool Submodule::contains(const Submodule& other) const {
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [this](const Vec& r) { return contains(r); });
}

std::uint64_t Submodule::order() const {
  std::uint64_t n = 1;
  for (const auto& row : rows_) {
    const auto factor = static_cast<std::uint64_t>(zm_.modulus() / row[pivot_column(row)]);
    if (n > std::numeric_limits<std::uint64_t>::max() / 2 / factor)
      throw std::overflow_error("submodule order overflows 64 bits");
    n *= factor;
  }
  return n;
}

void Submodule::for_each(std::uint64_t cap, const std::function<void(const Vec&)>& visit) const {
  std::uint64_t total = 0;
  try {
    total = order();
  } catch (const std::overflow_error&) {
    throw CapExceeded("submodule order", cap);
  }
  if (total > cap) throw CapExceeded("submodule of order " + std::to_string(total), cap);

  const std::size_t n = rows_.size();
  Vec bounds(n), counter(n, 0);
  for (std::size_t i = 0; i < n; ++i) bounds[i] = zm_.modulus() / rows_[i][pivot_column(rows_[i])];
  Vec current(dim_, 0);
  while (true) {
    visit(current);
    std::size_t i = 0;
    for (; i < n; ++i) {
      for (std::size_t k = 0; k < dim_; ++k) current[k] = zm_.add(current[k], rows_[i][k]);
      if (++counter[i] < bounds[i]) break;
      // bounds[i] * row need not vanish outside the pivot column
      for (std::size_t k = 0; k < dim_; ++k) current[k] = zm_.sub(current[k], zm_.mul(bounds[i], rows_[i][k]));
      counter[i] = 0;
    }
    if (i == n) break;
  }
}

std::vector<Vec> Submodule::elements(std::uint64_t cap) const {
  std::vector<Vec> out;
  for_each(cap, [&out](const Vec& v) { out.push_back(v); });
  return out;
}

Submodule Submodule::sum(const Submodule& other) const {
  if (!(zm_ == other.zm_) || dim_ != other.dim_) throw std::invalid_argument("submodule ambient mismatch");
  std::vector<Vec> gens = rows_;
  gens.insert(gens.end(), other.rows_.begin(), other.rows_.end());
  return span(zm_, dim_, std::move(gens));
}

Submodule Submodule::intersect(const Submodule& other) const {
  if (!(zm_ == other.zm_) || dim_ != other.dim_) throw std::invalid_argument("submodule ambient mismatch");
  // Zassenhaus: rows (r, r) for r in this, (s, 0) for s in other. The Howell
  // rows with vanishing left half span the intersection in their right half.
  std::vector<Vec> gens;
  for (const auto& r : rows_) {
    Vec g(r);
    g.insert(g.end(), r.begin(), r.end());
    gens.push_back(std::move(g));
  }
  for (const auto& s : other.rows_) {
    Vec g(s);
    g.resize(2 * dim_, 0);
    gens.push_back(std::move(g));
  }
  std::vector<Vec> result;
  for (auto& row : howell_form(zm_, std::move(gens), 2 * dim_))
    if (pivot_column(row) >= dim_) result.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(dim_), row.end());
  return span(zm_, dim_, std::move(result));
}

std::optional<LinearSolution> solve_linear(const ZMod& zm, const Matrix& m, std::span<const Int> b) {
  const std::size_t n_eq = m.rows(), n_var = m.cols();
  if (b.size() != n_eq) throw std::invalid_argument("right-hand side length mismatch");

  std::vector<Vec> gens(n_var, Vec(n_eq + n_var, 0));
  for (std::size_t i = 0; i < n_var; ++i) {
    for (std::size_t r = 0; r < n_eq; ++r) gens[i][r] = m(r, i);
    gens[i][n_eq + i] = 1;
  }
  const auto h = howell_form(zm, std::move(gens), n_eq + n_var);

  Vec target(n_eq + n_var, 0);
  for (std::size_t r = 0; r < n_eq; ++r) target[r] = zm.reduce(b[r]);

  std::size_t hi = 0;
  std::vector<Vec> kernel_rows;
  for (std::size_t j = 0; j < n_eq; ++j) {
    while (hi < h.size() && pivot_column(h[hi]) < j) ++hi;
    if (hi < h.size() && pivot_column(h[hi]) == j) {
      const Int p = h[hi][j];
      if (target[j] % p != 0) return std::nullopt;
      const Int q = target[j] / p;
      for (std::size_t k = j; k < target.size(); ++k) target[k] = zm.sub(target[k], zm.mul(q, h[hi][k]));
    } else if (target[j] != 0) {
      return std::nullopt;
    }
  }
  for (const auto& row : h)
    if (pivot_column(row) >= n_eq) kernel_rows.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(n_eq), row.end());

  Vec x(n_var);
  for (std::size_t i = 0; i < n_var; ++i) x[i] = zm.neg(target[n_eq + i]);
  auto ker = Submodule::span(zm, n_var, std::move(kernel_rows));
  Vec least = ker.reduce(x);
  return LinearSolution{std::move(least), std::move(ker)};
}

Submodule kernel(const ZMod& zm, const Matrix& m) {
  const Vec zero(m.rows(), 0);
  return solve_linear(zm, m, zero)->kernel;
}

Submodule column_span(const ZMod& zm, const Matrix& m) {
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < m.cols(); ++j) gens.push_back(m.column(j));
  return Submodule::span(zm, m.rows(), std::move(gens));
}

}  // namespace skewsep
