#include "langparams/kostant.hpp"

#include "langparams/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace langparams::kostant {

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    QMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Rat& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    QMatrix r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    QMatrix r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
    return r;
}

QMatrix QMatrix::operator*(const Rat& k) const {
    QMatrix r = *this;
    for (auto& x : r.e) x *= k;
    return r;
}

QMatrix QMatrix::transpose() const {
    QMatrix r(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

QMatrix bracket(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

namespace {

// Solve the homogeneous system M x = 0 by Gauss-Jordan; returns a kernel basis.
std::vector<std::vector<Rat>> nullspace(QMatrix m) {
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        Rat pv = m.at(rank, col);
        for (int j = 0; j < m.cols; ++j) m.at(rank, j) /= pv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank) continue;
            Rat factor = m.at(r, col);
            if (factor == 0) continue;
            for (int j = 0; j < m.cols; ++j) m.at(r, j) -= factor * m.at(rank, j);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rat> v(m.cols);
        v[free_col] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -m.at(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

Rat determinant(QMatrix m) {
    Rat det = 1;
    for (int col = 0; col < m.cols; ++col) {
        int pivot = -1;
        for (int r = col; r < m.rows; ++r)
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(col, j));
            det = -det;
        }
        Rat pv = m.at(col, col);
        det *= pv;
        for (int r = col + 1; r < m.rows; ++r) {
            Rat factor = m.at(r, col) / pv;
            if (factor == 0) continue;
            for (int j = col; j < m.cols; ++j) m.at(r, j) -= factor * m.at(col, j);
        }
    }
    return det;
}

// Scaled-integer primitive form of a rational vector.
std::vector<Int> primitive_integer(const std::vector<Rat>& v) {
    Int den = 1;
    for (const auto& x : v) {
        Int d = boost::multiprecision::denominator(x);
        den = den / boost::multiprecision::gcd(den, d) * d;
    }
    std::vector<Int> out(v.size());
    Int g = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        out[i] = boost::multiprecision::numerator(v[i] * Rat(den));
        g = boost::multiprecision::gcd(g, out[i]);
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

std::vector<QMatrix> basis_to_matrices(const std::vector<std::vector<Rat>>& vecs, int n) {
    std::vector<QMatrix> out;
    for (const auto& v : vecs) {
        std::vector<Int> zi = primitive_integer(v);
        QMatrix m(n, n);
        for (int t = 0; t < n * n; ++t) m.e[t] = Rat(zi[t]);
        out.push_back(std::move(m));
    }
    return out;
}

// Constraint rows expressing membership in the algebra: trace zero for sl,
// X^T J + J X = 0 for sp4, nothing for gl.
QMatrix algebra_constraints(const std::string& label, int n, const QMatrix& form_j) {
    if (label.rfind("sl", 0) == 0) {
        QMatrix c(1, n * n);
        for (int i = 0; i < n; ++i) c.at(0, i * n + i) = 1;
        return c;
    }
    if (label.rfind("sp", 0) == 0) {
        QMatrix c(n * n, n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int row = a * n + b;
                for (int k = 0; k < n; ++k) {
                    c.at(row, k * n + a) += form_j.at(k, b);
                    c.at(row, k * n + b) += form_j.at(a, k);
                }
            }
        return c;
    }
    return QMatrix(0, n * n);
}

}  // namespace

KostantFrame principal_triple(const std::string& label) {
    KostantFrame fr;
    fr.algebra = label;
    bool is_sl = label.rfind("sl", 0) == 0;
    bool is_gl = label.rfind("gl", 0) == 0;
    bool is_sp = label.rfind("sp", 0) == 0;
    if (!is_sl && !is_gl && !is_sp) throw UnsupportedTypeError(label);
    int n = std::stoi(label.substr(2));
    if (is_sp && n != 4) throw UnsupportedTypeError(label);
    if ((is_sl || is_gl) && (n < 2 || n > 5)) throw UnsupportedTypeError(label);
    fr.n = n;
    fr.gl_center = is_gl;

    // E = regular nilpotent (full Jordan block), H = sum of positive coroots.
    fr.e = QMatrix(n, n);
    for (int i = 0; i + 1 < n; ++i) fr.e.at(i, i + 1) = 1;
    fr.h = QMatrix(n, n);
    fr.h_diag.resize(n);
    for (int i = 0; i < n; ++i) {
        fr.h_diag[i] = n - 1 - 2 * i;
        fr.h.at(i, i) = fr.h_diag[i];
    }

    QMatrix form_j(n, n);
    if (is_sp) {
        // J_{i, n+1-i} = (-1)^i (1-based): the full Jordan block lies in sp_n.
        for (int i = 1; i <= n; ++i) form_j.at(i - 1, n - i) = (i % 2 == 0) ? 1 : -1;
    }
    QMatrix constraints = algebra_constraints(is_gl ? "gl" : label, n, form_j);

    // F from [H,F] = -2F and [E,F] = H, inside the algebra.
    {
        int nn = n * n;
        // [E, X] - H = 0 is inhomogeneous; solve via an extra column.
        QMatrix aug(2 * nn + constraints.rows, nn + 1);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                aug.at(a * n + b, a * n + b) = Rat(fr.h_diag[a] - fr.h_diag[b] + 2);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int row = nn + a * n + b;
                // [E, X]_{ab} = sum_k E_{ak} X_{kb} - X_{ak} E_{kb}
                if (a + 1 < n) aug.at(row, (a + 1) * n + b) += 1;
                if (b - 1 >= 0) aug.at(row, a * n + (b - 1)) -= 1;
                aug.at(row, nn) = -fr.h.at(a, b);
            }
        for (int r = 0; r < constraints.rows; ++r)
            for (int c = 0; c < nn; ++c) aug.at(2 * nn + r, c) = constraints.at(r, c);
        // Kernel vectors with a nonzero last coordinate give solutions.
        auto basis = nullspace(aug);
        std::vector<Rat> sol;
        int solutions = 0;
        for (auto& v : basis)
            if (v[nn] != 0) {
                ++solutions;
                sol = v;
                for (auto& x : sol) x /= sol[nn];
            }
        if (solutions != 1)
            throw std::logic_error("principal F is not unique for " + label);
        fr.f = QMatrix(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) fr.f.at(a, b) = sol[a * n + b];
    }

    // Triple identities, exactly.
    if (!(bracket(fr.h, fr.e) == fr.e * Rat(2)) || !(bracket(fr.h, fr.f) == fr.f * Rat(-2)) ||
        !(bracket(fr.e, fr.f) == fr.h))
        throw std::logic_error("triple identities failed for " + label);

    // Centralizer of E inside the algebra, split into ad(H) weight spaces.
    int nn = n * n;
    for (int w = 0; w <= 2 * n; w += 2) {
        QMatrix sys(2 * nn + constraints.rows, nn);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int row = a * n + b;
                // [E, X]_{ab}
                if (a + 1 < n) sys.at(row, (a + 1) * n + b) += 1;
                if (b - 1 >= 0) sys.at(row, a * n + (b - 1)) -= 1;
                // ([H, X] - w X)_{ab}
                int row2 = nn + a * n + b;
                sys.at(row2, a * n + b) = Rat(fr.h_diag[a] - fr.h_diag[b] - w);
            }
        for (int r = 0; r < constraints.rows; ++r)
            for (int c = 0; c < nn; ++c) sys.at(2 * nn + r, c) = constraints.at(r, c);
        for (auto& v : basis_to_matrices(nullspace(sys), n)) {
            fr.centralizer_basis.push_back(v);
            fr.weights.push_back(w);
        }
    }
    // For gl labels the center is the weight-0 line the loop already found.
    return fr;
}

std::optional<PinnedOuter> pinned_outer(const KostantFrame& frame) {
    if (frame.n < 3 || frame.algebra.rfind("sp", 0) == 0) return std::nullopt;
    int n = frame.n;
    for (int start : {0, 1}) {
        PinnedOuter beta;
        beta.j = QMatrix(n, n);
        for (int i = 0; i < n; ++i)
            beta.j.at(i, n - 1 - i) = ((i + start) % 2 == 0) ? 1 : -1;
        if (apply_outer(beta, frame.e) == frame.e && apply_outer(beta, frame.h) == frame.h)
            return beta;
    }
    throw std::logic_error("no sign pattern fixes the pinning");
}

QMatrix apply_outer(const PinnedOuter& beta, const QMatrix& x) {
    // beta(X) = -J X^T J^{-1}; for the alternating antidiagonal J, J^{-1} = +-J.
    int n = x.rows;
    // compute J^{-1} directly: solve via the antidiagonal structure
    QMatrix jinv(n, n);
    for (int i = 0; i < n; ++i) {
        // J has a single entry in each row: J_{i, n-1-i} = s_i; J^{-1}_{n-1-i, i} = 1/s_i
        const Rat& s = beta.j.at(i, n - 1 - i);
        jinv.at(n - 1 - i, i) = Rat(1) / s;
    }
    return (beta.j * x.transpose() * jinv) * Rat(-1);
}

IntPoly frame_chi(const KostantFrame& frame, bool twisted) {
    auto t_pow_minus = [](int d, int sign) {
        std::vector<Int> c(d + 1, Int(0));
        c[0] = -sign;
        c[d] = 1;
        return IntPoly(std::move(c));
    };
    IntPoly acc = IntPoly::constant(1);
    if (frame.algebra.rfind("sp", 0) == 0) {
        for (int d = 1; d <= frame.n / 2; ++d) acc = acc * t_pow_minus(2 * d, 1);
        return acc;
    }
    for (int d = 2; d <= frame.n; ++d)
        acc = acc * t_pow_minus(d, twisted ? (d % 2 == 0 ? 1 : -1) : 1);
    if (frame.gl_center) acc = acc * t_pow_minus(1, twisted ? -1 : 1);
    return acc;
}

namespace {

// Coordinates of y in the centralizer basis (unique; asserts membership).
std::vector<Rat> coords_in_basis(const KostantFrame& fr, const QMatrix& y) {
    int nn = fr.n * fr.n;
    int d = static_cast<int>(fr.centralizer_basis.size());
    QMatrix aug(nn, d + 1);
    for (int j = 0; j < d; ++j)
        for (int t = 0; t < nn; ++t) aug.at(t, j) = fr.centralizer_basis[j].e[t];
    for (int t = 0; t < nn; ++t) aug.at(t, d) = y.e[t];
    // Gauss-Jordan; back-substitute.
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < d && rank < nn; ++col) {
        int pivot = -1;
        for (int r = rank; r < nn; ++r)
            if (aug.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::logic_error("centralizer basis degenerate");
        for (int j = 0; j <= d; ++j) std::swap(aug.at(pivot, j), aug.at(rank, j));
        Rat pv = aug.at(rank, col);
        for (int j = 0; j <= d; ++j) aug.at(rank, j) /= pv;
        for (int r = 0; r < nn; ++r) {
            if (r == rank) continue;
            Rat factor = aug.at(r, col);
            if (factor == 0) continue;
            for (int j = 0; j <= d; ++j) aug.at(r, j) -= factor * aug.at(rank, j);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<Rat> coords(d);
    for (int r = 0; r < rank; ++r) coords[pivot_col[r]] = aug.at(r, d);
    // residual must vanish
    QMatrix recon(fr.n, fr.n);
    for (int j = 0; j < d; ++j)
        if (coords[j] != 0) recon = recon + fr.centralizer_basis[j] * coords[j];
    if (!(recon == y))
        throw BadActionError("operator does not preserve the centralizer");
    return coords;
}

QMatrix lambda_diag(const KostantFrame& fr, const Rat& t) {
    QMatrix l(fr.n, fr.n);
    for (int i = 0; i < fr.n; ++i) {
        Rat v = 1;
        long w = fr.h_diag[i];
        for (long k = 0; k < std::abs(w); ++k) v *= t;
        if (w < 0) v = Rat(1) / v;
        l.at(i, i) = v;
    }
    return l;
}

}  // namespace

KostantDetReport kostant_determinant(const KostantFrame& frame, const PinnedOuter* beta,
                                     const Rat& t) {
    if (t == 0) throw ValidationError("t must be nonzero");
    int d = static_cast<int>(frame.centralizer_basis.size());
    QMatrix lam = lambda_diag(frame, t);
    QMatrix lam_inv = lambda_diag(frame, Rat(1) / t);
    QMatrix op(d, d);
    for (int j = 0; j < d; ++j) {
        QMatrix x = frame.centralizer_basis[j];
        if (beta) x = apply_outer(*beta, x);
        QMatrix y = (lam * x * lam_inv) * (t * t);
        y = y - frame.centralizer_basis[j];
        auto coords = coords_in_basis(frame, y);
        for (int i = 0; i < d; ++i) op.at(i, j) = coords[i];
    }
    KostantDetReport rep;
    rep.det = determinant(op);
    IntPoly chi = frame_chi(frame, beta != nullptr);
    Rat t2 = t * t;
    // chi(t^2) as a rational
    Rat chi_val = 0;
    for (int i = chi.degree(); i >= 0; --i) chi_val = chi_val * t2 + Rat(chi.coeff(i));
    if (rep.det != chi_val && rep.det != -chi_val)
        throw std::logic_error("Kostant determinant does not match chi(t^2)");
    rep.sign = rep.det == chi_val ? 1 : -1;
    rep.chi_at_t2 = boost::multiprecision::numerator(chi_val);
    return rep;
}

bool regular_unipotent_check(const KostantFrame& frame, const PinnedOuter* beta,
                             const fingrp::FiniteField& field, long q) {
    using fingrp::FiniteField;
    FiniteField work = field;
    int r = work.sqrt(work.from_int(q));
    if (r < 0) {
        work = FiniteField(field.ell(), field.k() * 2);
        r = work.sqrt(work.from_int(q));
        if (r < 0) throw BadInputError("no square root of q in the quadratic extension");
    }
    int d = static_cast<int>(frame.centralizer_basis.size());
    int n = frame.n;
    int nn = n * n;

    // Reduce the (integral, primitive) centralizer basis mod ell.
    auto reduce_vec = [&](const QMatrix& m) {
        std::vector<Rat> v(m.e.begin(), m.e.end());
        std::vector<Int> zi = primitive_integer(v);
        std::vector<int> out(zi.size());
        for (size_t i = 0; i < zi.size(); ++i)
            out[i] = work.from_int((zi[i] % work.ell()).convert_to<long long>());
        return out;
    };
    std::vector<std::vector<int>> basis_red;
    for (const auto& b : frame.centralizer_basis) basis_red.push_back(reduce_vec(b));

    // lambda(sqrt q) and the operator X -> q lam beta(X) lam^{-1} - X over F.
    std::vector<int> lam(n), lam_inv(n);
    for (int i = 0; i < n; ++i) {
        lam[i] = work.pow(r, frame.h_diag[i]);
        lam_inv[i] = work.inv(lam[i]);
    }
    int qv = work.from_int(q);

    // beta as a signed antidiagonal over F when present.
    auto apply_beta_red = [&](const std::vector<int>& x) {
        if (!beta) return x;
        // y = -J X^T J^{-1}: with J_{i,n-1-i} = s_i, y_{ab} = -s_a X_{n-1-b, n-1-a} s_b^{-1}.
        std::vector<int> sgn(n);
        for (int i = 0; i < n; ++i) {
            Rat s = beta->j.at(i, n - 1 - i);
            sgn[i] = s == 1 ? work.one() : work.neg(work.one());
        }
        std::vector<int> y(nn, 0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int v = x[size_t(n - 1 - b) * n + (n - 1 - a)];
                if (v == 0) continue;
                int s = work.mul(sgn[a], work.inv(sgn[b]));
                y[size_t(a) * n + b] = work.neg(work.mul(s, v));
            }
        return y;
    };

    // Coordinates via Gaussian elimination against the reduced basis.
    // Build the d x d operator matrix, then test invertibility.
    std::vector<std::vector<int>> op_cols;
    for (int j = 0; j < d; ++j) {
        std::vector<int> x = apply_beta_red(basis_red[j]);
        std::vector<int> y(nn, 0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int v = x[size_t(a) * n + b];
                if (v == 0) continue;
                y[size_t(a) * n + b] =
                    work.mul(qv, work.mul(lam[a], work.mul(v, lam_inv[b])));
            }
        for (int t = 0; t < nn; ++t) y[t] = work.sub(y[t], basis_red[j][t]);
        op_cols.push_back(std::move(y));
    }
    // Solve [basis | op_cols]: coordinates, then det != 0 test; do both with
    // one elimination over the combined matrix.
    // Set up an nn x (d + d) system and eliminate.
    std::vector<std::vector<int>> aug(nn, std::vector<int>(2 * d, 0));
    for (int j = 0; j < d; ++j)
        for (int t = 0; t < nn; ++t) {
            aug[t][j] = basis_red[j][t];
            aug[t][d + j] = op_cols[j][t];
        }
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < d && rank < nn; ++col) {
        int pivot = -1;
        for (int rr = rank; rr < nn; ++rr)
            if (aug[rr][col] != 0) {
                pivot = rr;
                break;
            }
        if (pivot < 0) throw std::logic_error("reduced centralizer basis degenerate");
        std::swap(aug[pivot], aug[rank]);
        int pi = work.inv(aug[rank][col]);
        for (int jj = 0; jj < 2 * d; ++jj) aug[rank][jj] = work.mul(aug[rank][jj], pi);
        for (int rr = 0; rr < nn; ++rr) {
            if (rr == rank) continue;
            int factor = aug[rr][col];
            if (factor == 0) continue;
            for (int jj = 0; jj < 2 * d; ++jj)
                aug[rr][jj] = work.sub(aug[rr][jj], work.mul(factor, aug[rank][jj]));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    // rows of coordinates: op matrix entries op[i][j] = aug[row_i][d + j]
    std::vector<std::vector<int>> op(d, std::vector<int>(d, 0));
    for (int rr = 0; rr < rank; ++rr)
        for (int j = 0; j < d; ++j) op[pivot_col[rr]][j] = aug[rr][d + j];
    // residual must vanish (the operator must preserve the span)
    for (int rr = rank; rr < nn; ++rr)
        for (int j = 0; j < d; ++j)
            if (aug[rr][d + j] != 0)
                throw std::logic_error("reduced operator leaves the centralizer span");
    // det(op) != 0 ?
    int det_rank = 0;
    for (int col = 0; col < d && det_rank < d; ++col) {
        int pivot = -1;
        for (int rr = det_rank; rr < d; ++rr)
            if (op[rr][col] != 0) {
                pivot = rr;
                break;
            }
        if (pivot < 0) continue;
        std::swap(op[pivot], op[det_rank]);
        int pi = work.inv(op[det_rank][col]);
        for (int jj = 0; jj < d; ++jj) op[det_rank][jj] = work.mul(op[det_rank][jj], pi);
        for (int rr = 0; rr < d; ++rr) {
            if (rr == det_rank) continue;
            int factor = op[rr][col];
            if (factor == 0) continue;
            for (int jj = 0; jj < d; ++jj)
                op[rr][jj] = work.sub(op[rr][jj], work.mul(factor, op[det_rank][jj]));
        }
        ++det_rank;
    }
    return det_rank == d;
}

}  // namespace langparams::kostant
