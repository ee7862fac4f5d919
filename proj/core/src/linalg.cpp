#include "veerkit/linalg.hpp"

#include <sstream>
#include <utility>

namespace veerkit {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<ZVec>& rows, int cols) {
    IntMatrix m(int(rows.size()), cols);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
}

ZVec IntMatrix::row(int i) const {
    ZVec r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
}

ZVec IntMatrix::col(int j) const {
    ZVec c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

ZVec IntMatrix::operator*(const ZVec& v) const {
    ZVec r(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool IntMatrix::is_zero() const {
    for (const Int& x : data_)
        if (x != 0) return false;
    return true;
}

IntMatrix IntMatrix::block(int r0, int r1, int c0, int c1) const {
    IntMatrix b(r1 - r0, c1 - c0);
    for (int i = r0; i < r1; ++i)
        for (int j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
    return b;
}

namespace {

// Elementary operations applied to S while keeping U*A*V = S and the inverses in step.
struct SmithState {
    IntMatrix S, U, Ui, V, Vi;
    int m, n;

    void add_row(int dst, int src, const Int& c) {  // row dst += c * row src
        if (c == 0) return;
        for (int j = 0; j < n; ++j) S(dst, j) += c * S(src, j);
        for (int j = 0; j < m; ++j) U(dst, j) += c * U(src, j);
        for (int i = 0; i < m; ++i) Ui(i, src) -= c * Ui(i, dst);
    }
    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int j = 0; j < n; ++j) std::swap(S(a, j), S(b, j));
        for (int j = 0; j < m; ++j) std::swap(U(a, j), U(b, j));
        for (int i = 0; i < m; ++i) std::swap(Ui(i, a), Ui(i, b));
    }
    void negate_row(int a) {
        for (int j = 0; j < n; ++j) S(a, j) = -S(a, j);
        for (int j = 0; j < m; ++j) U(a, j) = -U(a, j);
        for (int i = 0; i < m; ++i) Ui(i, a) = -Ui(i, a);
    }
    void add_col(int dst, int src, const Int& c) {  // col dst += c * col src
        if (c == 0) return;
        for (int i = 0; i < m; ++i) S(i, dst) += c * S(i, src);
        for (int i = 0; i < n; ++i) V(i, dst) += c * V(i, src);
        for (int j = 0; j < n; ++j) Vi(src, j) -= c * Vi(dst, j);
    }
    void swap_cols(int a, int b) {
        if (a == b) return;
        for (int i = 0; i < m; ++i) std::swap(S(i, a), S(i, b));
        for (int i = 0; i < n; ++i) std::swap(V(i, a), V(i, b));
        for (int j = 0; j < n; ++j) std::swap(Vi(a, j), Vi(b, j));
    }
};

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
    const int m = a.rows(), n = a.cols();
    SmithState st{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n), m, n};
    int k = 0;
    for (; k < std::min(m, n); ++k) {
        while (true) {
            // pivot = entry of least absolute value in the trailing block
            int pi = -1, pj = -1;
            for (int i = k; i < m; ++i)
                for (int j = k; j < n; ++j)
                    if (st.S(i, j) != 0 && (pi < 0 || abs(st.S(i, j)) < abs(st.S(pi, pj)))) pi = i, pj = j;
            if (pi < 0) goto done;
            st.swap_rows(k, pi);
            st.swap_cols(k, pj);
            bool clean = true;
            for (int i = k + 1; i < m; ++i) {
                st.add_row(i, k, -floor_div(st.S(i, k), st.S(k, k)));
                if (st.S(i, k) != 0) clean = false;
            }
            for (int j = k + 1; j < n; ++j) {
                st.add_col(j, k, -floor_div(st.S(k, j), st.S(k, k)));
                if (st.S(k, j) != 0) clean = false;
            }
            if (!clean) continue;
            int bad = -1;
            for (int i = k + 1; i < m && bad < 0; ++i)
                for (int j = k + 1; j < n; ++j)
                    if (st.S(i, j) % st.S(k, k) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            st.add_row(k, bad, 1);
        }
        if (st.S(k, k) < 0) st.negate_row(k);
    }
done:
    SmithForm out{st.U, st.Ui, st.S, st.V, st.Vi, {}, 0};
    for (int i = 0; i < std::min(m, n) && out.S(i, i) != 0; ++i) out.diagonal.push_back(out.S(i, i));
    out.rank = int(out.diagonal.size());
    return out;
}

Int dot(const ZVec& a, const ZVec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const QVec& a, const QVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const QVec& a, const ZVec& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

ZVec primitive(ZVec v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    if (g > 1)
        for (Int& x : v) x /= g;
    return v;
}

ZVec primitive(const QVec& v) {
    Int l = 1;
    for (const Rat& x : v) l = lcm(l, x.get_den());
    ZVec z(v.size());
    for (size_t i = 0; i < v.size(); ++i) z[i] = Rat(v[i] * l).get_num();
    return primitive(std::move(z));
}

QVec to_rational(const ZVec& v) {
    QVec q(v.size());
    for (size_t i = 0; i < v.size(); ++i) q[i] = v[i];
    return q;
}

bool is_zero(const ZVec& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

namespace {

// Fraction-free row echelon form in place; returns pivot columns.
std::vector<int> echelon(std::vector<ZVec>& rows, int dim) {
    std::vector<int> pivots;
    size_t r = 0;
    for (int c = 0; c < dim && r < rows.size(); ++c) {
        size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Int a = rows[r][c], b = rows[i][c];
            for (int j = 0; j < dim; ++j) rows[i][j] = a * rows[i][j] - b * rows[r][j];
            rows[i] = primitive(std::move(rows[i]));
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

}  // namespace

int rank(const std::vector<ZVec>& rows, int dim) {
    std::vector<ZVec> work = rows;
    return int(echelon(work, dim).size());
}

std::vector<ZVec> nullspace(const std::vector<ZVec>& rows, int dim) {
    std::vector<ZVec> work = rows;
    std::vector<int> piv = echelon(work, dim);
    std::vector<bool> is_piv(dim, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<ZVec> basis;
    for (int free = 0; free < dim; ++free) {
        if (is_piv[free]) continue;
        // x_free = L, x_piv(r) = -L * row_r[free] / row_r[piv_r]
        Int l = 1;
        for (size_t r = 0; r < piv.size(); ++r) l = lcm(l, work[r][piv[r]]);
        ZVec x(dim);
        x[free] = l;
        for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -l * work[r][free] / work[r][piv[r]];
        basis.push_back(primitive(std::move(x)));
    }
    return basis;
}

std::string to_string(const ZVec& v) {
    std::ostringstream s;
    s << '[';
    for (size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    s << ']';
    return s.str();
}

std::string to_string(const QVec& v) {
    std::ostringstream s;
    s << '[';
    for (size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    s << ']';
    return s.str();
}

}  // namespace veerkit
