#include "langparams/intmatrix.hpp"

#include "langparams/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace langparams::exactalg {

IntMatrix::IntMatrix(int rows, int cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != size_t(rows) * cols)
        throw ValidationError("entry count does not match matrix shape");
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw ValidationError("matrix shape mismatch in product");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw ValidationError("matrix shape mismatch in sum");
    IntMatrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw ValidationError("matrix shape mismatch in difference");
    IntMatrix r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

IntMatrix IntMatrix::pow(unsigned long k) const {
    if (rows_ != cols_) throw ValidationError("pow of non-square matrix");
    IntMatrix r = identity(rows_), b = *this;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x == 0; });
}

unsigned long IntMatrix::finite_order(unsigned long bound) const {
    if (rows_ != cols_) return 0;
    IntMatrix p = *this;
    for (unsigned long m = 1; m <= bound; ++m) {
        if (p.is_identity()) return m;
        p = p * (*this);
    }
    return 0;
}

IntPoly IntMatrix::char_poly() const {
    if (rows_ != cols_) throw ValidationError("char poly of non-square matrix");
    int n = rows_;
    // Faddeev-LeVerrier: all divisions are exact.
    std::vector<Int> c(n + 1, Int(0));
    c[n] = 1;
    IntMatrix mk = *this;  // M * B_{k-1}, starting with B_0 = I
    for (int k = 1; k <= n; ++k) {
        Int tr = 0;
        for (int i = 0; i < n; ++i) tr += mk.at(i, i);
        Int ck = -tr / k;
        c[n - k] = ck;
        if (k < n) {
            for (int i = 0; i < n; ++i) mk.at(i, i) += ck;
            mk = (*this) * mk;
        }
    }
    return IntPoly(std::move(c));
}

Int IntMatrix::det() const {
    IntPoly p = char_poly();
    Int c0 = p.coeff(0);  // det(T*I - M) at T=0 is (-1)^n det(M)
    return (rows_ % 2 == 0) ? c0 : -c0;
}

namespace {

struct SnfState {
    IntMatrix a, u, v;
};

void row_swap(SnfState& s, int i, int j) {
    for (int k = 0; k < s.a.cols(); ++k) std::swap(s.a.at(i, k), s.a.at(j, k));
    for (int k = 0; k < s.u.cols(); ++k) std::swap(s.u.at(i, k), s.u.at(j, k));
}

void col_swap(SnfState& s, int i, int j) {
    for (int k = 0; k < s.a.rows(); ++k) std::swap(s.a.at(k, i), s.a.at(k, j));
    for (int k = 0; k < s.v.rows(); ++k) std::swap(s.v.at(k, i), s.v.at(k, j));
}

// row_i += f * row_j
void row_add(SnfState& s, int i, int j, const Int& f) {
    for (int k = 0; k < s.a.cols(); ++k) s.a.at(i, k) += f * s.a.at(j, k);
    for (int k = 0; k < s.u.cols(); ++k) s.u.at(i, k) += f * s.u.at(j, k);
}

// col_i += f * col_j
void col_add(SnfState& s, int i, int j, const Int& f) {
    for (int k = 0; k < s.a.rows(); ++k) s.a.at(k, i) += f * s.a.at(k, j);
    for (int k = 0; k < s.v.rows(); ++k) s.v.at(k, i) += f * s.v.at(k, j);
}

void row_negate(SnfState& s, int i) {
    for (int k = 0; k < s.a.cols(); ++k) s.a.at(i, k) = -s.a.at(i, k);
    for (int k = 0; k < s.u.cols(); ++k) s.u.at(i, k) = -s.u.at(i, k);
}

}  // namespace

SmithNormalForm smith_normal_form(const IntMatrix& m) {
    SnfState s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    int n = std::min(m.rows(), m.cols());
    for (int t = 0; t < n; ++t) {
        // Find a pivot: nonzero entry of least absolute value in the trailing block.
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < s.a.rows(); ++i)
            for (int j = t; j < s.a.cols(); ++j) {
                const Int& x = s.a.at(i, j);
                if (x == 0) continue;
                Int ax = boost::multiprecision::abs(x);
                if (pi < 0 || ax < best) {
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        row_swap(s, t, pi);
        col_swap(s, t, pj);
        // Clear row and column t; repeat until clean since reductions can refill.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = t + 1; i < s.a.rows(); ++i) {
                if (s.a.at(i, t) == 0) continue;
                Int q = s.a.at(i, t) / s.a.at(t, t);
                row_add(s, i, t, -q);
                if (s.a.at(i, t) != 0) {
                    row_swap(s, t, i);
                    dirty = true;
                }
            }
            for (int j = t + 1; j < s.a.cols(); ++j) {
                if (s.a.at(t, j) == 0) continue;
                Int q = s.a.at(t, j) / s.a.at(t, t);
                col_add(s, j, t, -q);
                if (s.a.at(t, j) != 0) {
                    col_swap(s, t, j);
                    dirty = true;
                }
            }
        }
        // Pivot must divide every remaining entry; absorb offenders and redo.
        for (int i = t + 1; i < s.a.rows(); ++i) {
            bool offending = false;
            for (int j = t + 1; j < s.a.cols(); ++j)
                if (s.a.at(i, j) % s.a.at(t, t) != 0) {
                    offending = true;
                    break;
                }
            if (offending) {
                row_add(s, t, i, 1);
                --t;  // redo this pivot position
                break;
            }
        }
    }
    // Sign normalization.
    for (int t = 0; t < n; ++t)
        if (s.a.at(t, t) < 0) row_negate(s, t);
    return SmithNormalForm{s.u, s.a, s.v};
}

IntMatrix integer_kernel(const IntMatrix& m) {
    SmithNormalForm snf = smith_normal_form(m);
    int n = std::min(m.rows(), m.cols());
    std::vector<int> zero_cols;
    for (int j = 0; j < m.cols(); ++j) {
        bool zero = j >= n || snf.d.at(j, j) == 0;
        if (zero) zero_cols.push_back(j);
    }
    IntMatrix basis(static_cast<int>(zero_cols.size()), m.cols());
    for (size_t r = 0; r < zero_cols.size(); ++r)
        for (int i = 0; i < m.cols(); ++i) basis.at(static_cast<int>(r), i) = snf.v.at(i, zero_cols[r]);
    return basis;
}

CokernelStructure cokernel_structure(const IntMatrix& m) {
    SmithNormalForm snf = smith_normal_form(m);
    CokernelStructure out;
    int n = std::min(m.rows(), m.cols());
    int nonzero = 0;
    for (int i = 0; i < n; ++i) {
        const Int& d = snf.d.at(i, i);
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) out.torsion.push_back(d);
    }
    out.free_rank = m.rows() - nonzero;
    return out;
}

}  // namespace langparams::exactalg
