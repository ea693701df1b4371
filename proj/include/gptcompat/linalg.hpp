#ifndef GPTCOMPAT_LINALG_HPP
#define GPTCOMPAT_LINALG_HPP

#include "gptcompat/rational.hpp"

#include <optional>
#include <vector>

namespace gptcompat {

/// Dense row-major rational matrix.
class Matrix
{
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalVector row(std::size_t r) const;
    void append_row(const RationalVector& values);

    bool operator==(const Matrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Rank by fraction-exact Gaussian elimination.
std::size_t rank(Matrix m);

/// Indices of a maximal linearly independent subset of the rows, chosen
/// greedily in row order.
std::vector<std::size_t> independent_rows(const Matrix& m);

/// Some solution of m x = rhs (free variables set to zero), or nullopt when
/// the system is inconsistent.
std::optional<RationalVector> solve_any(Matrix m, RationalVector rhs);

} // namespace gptcompat

#endif
