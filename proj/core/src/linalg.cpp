#include "destab/linalg.hpp"

namespace destab {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return Mat();
    Mat m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols())
            throw DimensionMismatch("Mat::from_rows: ragged rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Vec Mat::row(std::size_t i) const {
    Vec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

Vec Mat::col(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

void Mat::set_col(std::size_t j, const Vec& v) {
    if (v.size() != rows_)
        throw DimensionMismatch("Mat::set_col: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

Mat Mat::transposed() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Mat Mat::operator*(const Mat& other) const {
    if (cols_ != other.rows_)
        throw DimensionMismatch("Mat::operator*: inner dimension mismatch");
    Mat r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                r.at(i, j) += aik * other.at(k, j);
        }
    return r;
}

Vec Mat::apply(const Vec& v) const {
    if (v.size() != cols_)
        throw DimensionMismatch("Mat::apply: length mismatch");
    Vec r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
}

namespace {

// Row echelon reduction with first-nonzero pivoting. Returns pivot columns.
std::vector<std::size_t> echelon(Mat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m.at(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
        Rat inv = 1 / m.at(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rat f = m.at(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

std::size_t rank(Mat m) {
    return echelon(m).size();
}

std::optional<Vec> solve_unique(Mat a, Vec b) {
    if (a.rows() != a.cols() || b.size() != a.rows())
        throw DimensionMismatch("solve_unique: shape mismatch");
    const std::size_t n = a.rows();
    Mat aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n) = b[i];
    }
    auto pivots = echelon(aug);
    if (pivots.size() != n || (!pivots.empty() && pivots.back() == n))
        return std::nullopt;
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug.at(i, n);
    return x;
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("inverse: not square");
    const std::size_t n = m.rows();
    Mat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto pivots = echelon(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        return std::nullopt;
    Mat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

Mat kernel_basis(const Mat& m) {
    Mat red = m;
    auto pivots = echelon(red);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat basis(n, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t fc = free_cols[k];
        basis.at(fc, k) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis.at(pivots[r], k) = -red.at(r, fc);
    }
    return basis;
}

Mat column_space_basis(const Mat& m) {
    Mat red = m;
    auto pivots = echelon(red);
    Mat basis(m.rows(), pivots.size());
    for (std::size_t k = 0; k < pivots.size(); ++k)
        basis.set_col(k, m.col(pivots[k]));
    return basis;
}

bool columns_contained(const Mat& space, const Mat& sub) {
    if (space.rows() != sub.rows())
        throw DimensionMismatch("columns_contained: row mismatch");
    Mat joint(space.rows(), space.cols() + sub.cols());
    for (std::size_t j = 0; j < space.cols(); ++j) joint.set_col(j, space.col(j));
    for (std::size_t j = 0; j < sub.cols(); ++j) joint.set_col(space.cols() + j, sub.col(j));
    return rank(joint) == rank(space);
}

bool is_positive_definite(const Mat& m) {
    if (m.rows() != m.cols()) return false;
    const std::size_t n = m.rows();
    // Elimination without row swaps: pivot i equals Delta_i / Delta_{i-1},
    // so the form is positive definite iff all pivots stay positive.
    Mat w = m;
    for (std::size_t i = 0; i < n; ++i) {
        if (w.at(i, i) <= 0) return false;
        for (std::size_t r = i + 1; r < n; ++r) {
            if (w.at(r, i) == 0) continue;
            Rat f = w.at(r, i) / w.at(i, i);
            for (std::size_t c = i; c < n; ++c) w.at(r, c) -= f * w.at(i, c);
        }
    }
    return true;
}

bool is_symmetric(const Mat& m) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m.at(i, j) != m.at(j, i)) return false;
    return true;
}

} // namespace destab
