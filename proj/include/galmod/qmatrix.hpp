#pragma once

#include "galmod/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace galmod {

// Dense matrix over Q, row major.  All arithmetic is exact.
class QMatrix {
  public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}
    QMatrix(std::initializer_list<std::initializer_list<Rat>> rows);

    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<Rat> row(std::size_t i) const;
    void set_row(std::size_t i, const std::vector<Rat>& v);

    QMatrix transpose() const;
    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix scaled(const Rat& c) const;
    bool operator==(const QMatrix& o) const = default;

    Rat det() const;                 // square only
    QMatrix inverse() const;         // throws error if singular
    std::size_t rank() const;

    bool is_zero() const;
    bool is_integral() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

// x * m for a row vector x.
std::vector<Rat> row_times(const std::vector<Rat>& x, const QMatrix& m);

// m acting on a coordinate column, returned as a flat vector.
std::vector<Rat> apply_col(const QMatrix& m, const std::vector<Rat>& v);

// Solve x * basis = v for a square invertible basis.
std::vector<Rat> solve_row(const QMatrix& basis, const std::vector<Rat>& v);

std::vector<Rat> add_rows(const std::vector<Rat>& a, const std::vector<Rat>& b);
std::vector<Rat> sub_rows(const std::vector<Rat>& a, const std::vector<Rat>& b);
std::vector<Rat> scale_row(const Rat& c, const std::vector<Rat>& v);
bool is_zero_row(const std::vector<Rat>& v);

}  // namespace galmod
