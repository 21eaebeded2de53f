#include "ossk/dense_matrix.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace ossk {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::vector<double> DenseMatrix::multiply(const std::vector<double>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("multiply: dimension mismatch");
    std::vector<double> y(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) acc += data_[r * cols_ + c] * x[c];
        y[r] = acc;
    }
    return y;
}

std::vector<double> DenseMatrix::multiply_transposed(const std::vector<double>& y) const {
    if (y.size() != rows_) throw std::invalid_argument("multiply_transposed: dimension mismatch");
    std::vector<double> z(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) z[c] += data_[r * cols_ + c] * y[r];
    return z;
}

double DenseMatrix::frobenius_norm() const {
    double acc = 0.0;
    for (double v : data_) acc += v * v;
    return std::sqrt(acc);
}

double DenseMatrix::trace() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) acc += data_[i * cols_ + i];
    return acc;
}

DenseMatrix read_matrix(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::istringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) row.push_back(std::stod(field));
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::invalid_argument("matrix rows have inconsistent lengths");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("matrix text contains no rows");
    DenseMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    return m;
}

DenseMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file '" + path + "'");
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const DenseMatrix& m) {
    out << std::setprecision(17);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ",";
            out << m(r, c);
        }
        out << "\n";
    }
}

void write_matrix_file(const std::string& path, const DenseMatrix& m) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    write_matrix(out, m);
}

}  // namespace ossk
