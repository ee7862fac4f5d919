#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace veerkit {

using Int = mpz_class;
using Rat = mpq_class;
using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;

// Dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {}
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<ZVec>& rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& operator()(int i, int j) { return data_[size_t(i) * cols_ + j]; }
    const Int& operator()(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

    ZVec row(int i) const;
    ZVec col(int j) const;
    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    ZVec operator*(const ZVec& v) const;
    bool operator==(const IntMatrix& o) const;
    bool is_zero() const;
    // Rows [r0, r1) and columns [c0, c1).
    IntMatrix block(int r0, int r1, int c0, int c1) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

// U * A * V = S with U, V unimodular and S diagonal, d1 | d2 | ..., all d_i >= 0.
struct SmithForm {
    IntMatrix U, U_inv, S, V, V_inv;
    ZVec diagonal;  // nonzero diagonal entries
    int rank = 0;
};
SmithForm smith_normal_form(const IntMatrix& a);

Int dot(const ZVec& a, const ZVec& b);
Rat dot(const QVec& a, const QVec& b);
Rat dot(const QVec& a, const ZVec& b);

// Divide by the gcd of the entries; the zero vector is returned unchanged.
ZVec primitive(ZVec v);
// Scale by the lcm of denominators, then make primitive. Direction is kept.
ZVec primitive(const QVec& v);
QVec to_rational(const ZVec& v);
bool is_zero(const ZVec& v);

int rank(const std::vector<ZVec>& rows, int dim);
// Integer basis of {x : rows . x = 0}.
std::vector<ZVec> nullspace(const std::vector<ZVec>& rows, int dim);

std::string to_string(const ZVec& v);
std::string to_string(const QVec& v);

}  // namespace veerkit
