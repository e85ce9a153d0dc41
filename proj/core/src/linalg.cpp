#include "trisec/linalg.hpp"

#include <utility>

namespace trisec {

namespace {

void check_rect(const Mat& m) {
    if (m.empty()) return;
    size_t cols = m[0].size();
    for (const auto& row : m)
        if (row.size() != cols) throw Error(Error::Kind::Dimension, "ragged matrix");
}

// Reduce in place to row echelon form; returns pivot column per pivot row.
std::vector<size_t> echelon(Mat& m) {
    check_rect(m);
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Scalar inv = m[r][c].inverse();
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Scalar f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

Scalar det(Mat m) {
    check_rect(m);
    size_t n = m.size();
    if (n == 0) return Scalar(1);
    if (m[0].size() != n) throw Error(Error::Kind::Dimension, "det of non-square matrix");
    Scalar result(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return Scalar(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            result = -result;
        }
        result *= m[c][c];
        Scalar inv = m[c][c].inverse();
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero()) continue;
            Scalar f = m[i][c] * inv;
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return result;
}

size_t rank(Mat m) { return echelon(m).size(); }

std::vector<Vec> kernel_basis(Mat m) {
    check_rect(m);
    if (m.empty()) return {};
    size_t cols = m[0].size();
    auto pivots = echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vec v(cols, Scalar(0));
        v[free] = Scalar(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(Mat m, Vec b) {
    check_rect(m);
    size_t rows = m.size();
    if (b.size() != rows) throw Error(Error::Kind::Dimension, "solve: rhs size mismatch");
    size_t cols = rows == 0 ? 0 : m[0].size();
    for (size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
    auto pivots = echelon(m);
    // Inconsistent iff a pivot lands in the rhs column.
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    Vec x(cols, Scalar(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols];
    return x;
}

} // namespace trisec
