#include "finnet/numerics/dense_matrix.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "finnet/errors.hpp"
#include "finnet/numerics/kernels.hpp"

namespace finnet {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DimensionMismatch(what);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    require(data_.size() == rows * cols, "Matrix: entry count does not match rows*cols");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        require(r.size() == cols_, "Matrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        require(rows[i].size() == c, "Matrix::from_rows: ragged rows");
        std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
}

Vector Matrix::column(std::size_t j) const {
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::all_finite() const noexcept {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.rows(), "matrix product: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    kernels::gemm(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
    require(a.cols() == x.size(), "matrix-vector product: dimensions differ");
    Vector y(a.rows());
    kernels::gemv(a.data(), a.rows(), a.cols(), x, y);
    return y;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum: shapes differ");
    Matrix c = a;
    kernels::axpy(1.0, b.data(), c.data());
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix difference: shapes differ");
    Matrix c = a;
    kernels::axpy(-1.0, b.data(), c.data());
    return c;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix c = a;
    for (double& v : c.data()) v *= s;
    return c;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    require(a.cols() == b.cols(), "vstack: column counts differ");
    std::vector<double> entries(a.data().begin(), a.data().end());
    entries.insert(entries.end(), b.data().begin(), b.data().end());
    return Matrix(a.rows() + b.rows(), a.cols(), std::move(entries));
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            if (aij == 0.0) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
        }
    return k;
}

Vector add(std::span<const double> a, std::span<const double> b) {
    require(a.size() == b.size(), "vector sum: sizes differ");
    Vector out(a.begin(), a.end());
    kernels::axpy(1.0, b, out);
    return out;
}

Vector sub(std::span<const double> a, std::span<const double> b) {
    require(a.size() == b.size(), "vector difference: sizes differ");
    Vector out(a.begin(), a.end());
    kernels::axpy(-1.0, b, out);
    return out;
}

Vector scaled(double s, std::span<const double> a) {
    Vector out(a.begin(), a.end());
    for (double& v : out) v *= s;
    return out;
}

double norm_inf(std::span<const double> a) noexcept {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

double norm1(std::span<const double> a) noexcept {
    double s = 0.0;
    for (double v : a) s += std::abs(v);
    return s;
}

double norm2(std::span<const double> a) noexcept {
    return std::sqrt(kernels::dot(a, a));
}

double sum(std::span<const double> a) noexcept {
    return std::accumulate(a.begin(), a.end(), 0.0);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    require(a.size() == b.size(), "max_abs_diff: sizes differ");
    return kernels::max_abs_diff(a, b);
}

}  // namespace finnet
