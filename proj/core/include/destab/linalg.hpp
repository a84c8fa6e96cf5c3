#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "destab/rational.hpp"

namespace destab {

// Dense rational matrix, row major. Sized for desk-scale problems; every
// operation is exact.
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    static Mat identity(std::size_t n);
    static Mat from_rows(const std::vector<Vec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec row(std::size_t i) const;
    Vec col(std::size_t j) const;
    void set_col(std::size_t j, const Vec& v);

    Mat transposed() const;
    Mat operator*(const Mat& other) const;
    Vec apply(const Vec& v) const;

    bool operator==(const Mat& other) const = default;

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

std::size_t rank(Mat m);

/// Solves a square system exactly; nullopt when the matrix is singular.
std::optional<Vec> solve_unique(Mat a, Vec b);

std::optional<Mat> inverse(const Mat& m);

/// Columns form a basis of the right kernel (deterministic RREF construction).
Mat kernel_basis(const Mat& m);

/// Basis of the column space: the pivot columns of m, in order.
Mat column_space_basis(const Mat& m);

/// True iff every column of sub lies in the column span of space.
bool columns_contained(const Mat& space, const Mat& sub);

/// Exact positive-definiteness test via the sign sequence of pivots
/// (equivalently the leading principal minors).
bool is_positive_definite(const Mat& m);

bool is_symmetric(const Mat& m);

} // namespace destab
