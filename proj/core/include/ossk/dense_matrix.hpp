#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace ossk {

// Row-major dense matrix of doubles; the working type of the LP and rank
// certificate code.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n);

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<double>& data() const { return data_; }

    std::vector<double> multiply(const std::vector<double>& x) const;        // A x
    std::vector<double> multiply_transposed(const std::vector<double>& y) const;  // A^T y

    double frobenius_norm() const;
    double trace() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// comma-separated decimal text, one row per line
DenseMatrix read_matrix(std::istream& in);
DenseMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const DenseMatrix& m);
void write_matrix_file(const std::string& path, const DenseMatrix& m);

}  // namespace ossk
