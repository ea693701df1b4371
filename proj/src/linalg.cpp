#include "gptcompat/linalg.hpp"

#include <stdexcept>

namespace gptcompat {

RationalVector Matrix::row(std::size_t r) const
{
    return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Matrix::append_row(const RationalVector& values)
{
    if (rows_ == 0 && cols_ == 0)
        cols_ = values.size();
    if (values.size() != cols_)
        throw std::invalid_argument("Matrix::append_row: width mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

namespace {

// Reduces m (and the attached right-hand side, if any) to row echelon form.
// Returns the pivot column of each echelon row.
std::vector<std::size_t> echelon(Matrix& m, RationalVector* rhs)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && sgn(m(p, c)) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != r) {
            for (std::size_t k = 0; k < m.cols(); ++k)
                std::swap(m(p, k), m(r, k));
            if (rhs)
                std::swap((*rhs)[p], (*rhs)[r]);
        }
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (sgn(m(i, c)) == 0)
                continue;
            const Rational f = m(i, c) / m(r, c);
            for (std::size_t k = c; k < m.cols(); ++k)
                m(i, k) -= f * m(r, k);
            if (rhs)
                (*rhs)[i] -= f * (*rhs)[r];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

std::size_t rank(Matrix m)
{
    return echelon(m, nullptr).size();
}

std::vector<std::size_t> independent_rows(const Matrix& m)
{
    std::vector<std::size_t> chosen;
    Matrix basis;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Matrix trial = basis;
        trial.append_row(m.row(i));
        if (rank(trial) == chosen.size() + 1) {
            basis = std::move(trial);
            chosen.push_back(i);
        }
    }
    return chosen;
}

std::optional<RationalVector> solve_any(Matrix m, RationalVector rhs)
{
    if (rhs.size() != m.rows())
        throw std::invalid_argument("solve_any: rhs length mismatch");
    const auto pivots = echelon(m, &rhs);
    for (std::size_t i = pivots.size(); i < m.rows(); ++i)
        if (sgn(rhs[i]) != 0)
            return std::nullopt;

    RationalVector x(m.cols(), Rational(0));
    for (std::size_t i = pivots.size(); i-- > 0;) {
        const std::size_t c = pivots[i];
        Rational acc = rhs[i];
        for (std::size_t k = c + 1; k < m.cols(); ++k)
            acc -= m(i, k) * x[k];
        x[c] = acc / m(i, c);
    }
    return x;
}

} // namespace gptcompat
