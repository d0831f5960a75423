#include "galmod/qmatrix.hpp"

namespace galmod {

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw error("QMatrix: ragged initializer");
        for (const auto& x : r) a_.push_back(x);
    }
}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<Rat> QMatrix::row(std::size_t i) const {
    return std::vector<Rat>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

void QMatrix::set_row(std::size_t i, const std::vector<Rat>& v) {
    if (v.size() != cols_) throw error("QMatrix::set_row: size mismatch");
    for (std::size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw error("QMatrix: shape mismatch in product");
    QMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw error("QMatrix: shape mismatch in sum");
    QMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw error("QMatrix: shape mismatch in difference");
    QMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

QMatrix QMatrix::scaled(const Rat& c) const {
    QMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

// Fraction-free would be faster; plain Gaussian elimination is plenty at the
// sizes this library sees.
Rat QMatrix::det() const {
    if (rows_ != cols_) throw error("QMatrix::det: not square");
    QMatrix w(*this);
    Rat d(1);
    std::size_t n = rows_;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && w.at(p, c) == 0) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w.at(p, j), w.at(c, j));
            d = -d;
        }
        d *= w.at(c, c);
        Rat inv = 1 / w.at(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (w.at(i, c) == 0) continue;
            Rat f = w.at(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) w.at(i, j) -= f * w.at(c, j);
        }
    }
    return d;
}

QMatrix QMatrix::inverse() const {
    if (rows_ != cols_) throw error("QMatrix::inverse: not square");
    std::size_t n = rows_;
    QMatrix w(*this);
    QMatrix inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && w.at(p, c) == 0) ++p;
        if (p == n) throw error("QMatrix::inverse: singular matrix");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w.at(p, j), w.at(c, j));
                std::swap(inv.at(p, j), inv.at(c, j));
            }
        Rat f = 1 / w.at(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            w.at(c, j) *= f;
            inv.at(c, j) *= f;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || w.at(i, c) == 0) continue;
            Rat g = w.at(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                w.at(i, j) -= g * w.at(c, j);
                inv.at(i, j) -= g * inv.at(c, j);
            }
        }
    }
    return inv;
}

std::size_t QMatrix::rank() const {
    QMatrix w(*this);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t p = r;
        while (p < rows_ && w.at(p, c) == 0) ++p;
        if (p == rows_) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(w.at(p, j), w.at(r, j));
        Rat inv = 1 / w.at(r, c);
        for (std::size_t i = r + 1; i < rows_; ++i) {
            if (w.at(i, c) == 0) continue;
            Rat f = w.at(i, c) * inv;
            for (std::size_t j = c; j < cols_; ++j) w.at(i, j) -= f * w.at(r, j);
        }
        ++r;
    }
    return r;
}

bool QMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

bool QMatrix::is_integral() const {
    for (const auto& x : a_)
        if (x.get_den() != 1) return false;
    return true;
}

std::vector<Rat> row_times(const std::vector<Rat>& x, const QMatrix& m) {
    if (x.size() != m.rows()) throw error("row_times: size mismatch");
    std::vector<Rat> r(m.cols());
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) r[j] += x[k] * m.at(k, j);
    }
    return r;
}

std::vector<Rat> apply_col(const QMatrix& m, const std::vector<Rat>& v) {
    if (v.size() != m.cols()) throw error("apply_col: size mismatch");
    std::vector<Rat> r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (v[j] != 0) r[i] += m.at(i, j) * v[j];
    return r;
}

std::vector<Rat> solve_row(const QMatrix& basis, const std::vector<Rat>& v) {
    return row_times(v, basis.inverse());
}

std::vector<Rat> add_rows(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.size() != b.size()) throw error("add_rows: size mismatch");
    std::vector<Rat> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

std::vector<Rat> sub_rows(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.size() != b.size()) throw error("sub_rows: size mismatch");
    std::vector<Rat> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

std::vector<Rat> scale_row(const Rat& c, const std::vector<Rat>& v) {
    std::vector<Rat> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

bool is_zero_row(const std::vector<Rat>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace galmod
