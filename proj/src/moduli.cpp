#include "langparams/moduli.hpp"

#include "langparams/errors.hpp"
#include "langparams/primes.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace langparams::moduli {

using fingrp::mat_inv;
using fingrp::mat_is_identity;
using fingrp::mat_is_unipotent;
using fingrp::mat_mul;
using fingrp::mat_pow;

GroupAut GroupAut::conj(const FiniteField& f, FqMatrix m) {
    mat_inv(f, m);  // validates invertibility
    GroupAut a;
    a.kind = Kind::Conj;
    a.c = std::move(m);
    return a;
}

FqMatrix GroupAut::apply(const FiniteField& f, const FqMatrix& g) const {
    if (kind == Kind::Trivial) return g;
    return mat_mul(f, c, mat_mul(f, g, mat_inv(f, c)));
}

FqMatrix GroupAut::apply_pow(const FiniteField& f, const FqMatrix& g, long k) const {
    if (kind == Kind::Trivial || k == 0) return g;
    FqMatrix ck = mat_pow(f, c, Int(k));
    return mat_mul(f, ck, mat_mul(f, g, mat_inv(f, ck)));
}

void SemidirectData::verify_relation(const FiniteField& f,
                                     const std::vector<FqMatrix>& sample) {
    for (const auto& g : sample) {
        FqMatrix lhs = theta_fr.apply(f, theta_s.apply(f, g));
        // theta_fr theta_s theta_fr^{-1} = theta_s^q  <=>  th_fr th_s = th_s^q th_fr
        FqMatrix rhs = theta_s.apply_pow(f, theta_fr.apply(f, g), q);
        if (lhs != rhs) throw BadActionError("W-relation fails on the sampled elements");
    }
    w_relation_ok = true;
}

namespace {

FqMatrix norm_q(const FiniteField& f, const SemidirectData& sd, const FqMatrix& sigma) {
    FqMatrix acc = sigma;
    FqMatrix twisted = sigma;
    for (long i = 1; i < sd.q; ++i) {
        twisted = sd.theta_s.apply(f, twisted);
        acc = mat_mul(f, acc, twisted);
    }
    return acc;
}

// The L-group element (sigma0, s) as a single matrix when theta_s is
// conjugation by C (then (g,s) -> g C is a faithful model); sigma0 itself for
// the trivial twist.
FqMatrix l_element_matrix(const FiniteField& f, const SemidirectData& sd,
                          const FqMatrix& sigma0) {
    if (sd.theta_s.kind == GroupAut::Kind::Trivial) return sigma0;
    return mat_mul(f, sigma0, sd.theta_s.c);
}

struct JordanMemo {
    const FiniteField& f;
    const SemidirectData& sd;
    std::map<FqMatrix, fingrp::JordanParts> memo;

    const fingrp::JordanParts& get(const FqMatrix& sigma0) {
        auto it = memo.find(sigma0);
        if (it != memo.end()) return it->second;
        FqMatrix lm = l_element_matrix(f, sd, sigma0);
        return memo.emplace(sigma0, fingrp::jordan(f, lm)).first->second;
    }
};

}  // namespace

std::vector<TameParameterPoint> enumerate_z1_serial(const GroupSpecFin& spec,
                                                    const SemidirectData& sd,
                                                    const std::vector<FqMatrix>& group,
                                                    std::uint64_t max_pairs) {
    if (!sd.w_relation_ok)
        throw BadActionError("semidirect relation has not been verified");
    std::uint64_t n = group.size();
    if (n * n > max_pairs) throw TooManyPairsError(n * n);
    const FiniteField& f = spec.field;

    std::vector<FqMatrix> rhs(group.size()), mid(group.size());
    for (size_t s = 0; s < group.size(); ++s) {
        rhs[s] = norm_q(f, sd, group[s]);
        mid[s] = sd.theta_fr.apply(f, group[s]);
    }

    JordanMemo jm{f, sd, {}};
    std::vector<TameParameterPoint> out;
    for (size_t fi = 0; fi < group.size(); ++fi) {
        FqMatrix tsF = sd.theta_s.apply_pow(f, group[fi], sd.q);
        for (size_t si = 0; si < group.size(); ++si) {
            if (mat_mul(f, group[fi], mid[si]) != mat_mul(f, rhs[si], tsF)) continue;
            TameParameterPoint pt;
            pt.f0 = group[fi];
            pt.sigma0 = group[si];
            const auto& jp = jm.get(group[si]);
            pt.sigma_ss = jp.s;
            pt.sigma_u = jp.u;
            out.push_back(std::move(pt));
        }
    }
    return out;
}

std::vector<TameParameterPoint> enumerate_z1(const GroupSpecFin& spec,
                                             const SemidirectData& sd,
                                             const std::vector<FqMatrix>& group,
                                             std::uint64_t max_pairs) {
    if (!sd.w_relation_ok)
        throw BadActionError("semidirect relation has not been verified");
    std::uint64_t n = group.size();
    if (n * n > max_pairs) throw TooManyPairsError(n * n);
    const FiniteField& f = spec.field;

    std::vector<FqMatrix> rhs(group.size()), mid(group.size());
    long count = static_cast<long>(group.size());
#pragma omp parallel for schedule(static)
    for (long s = 0; s < count; ++s) {
        rhs[s] = norm_q(f, sd, group[s]);
        mid[s] = sd.theta_fr.apply(f, group[s]);
    }

    // Shard the outer F0 loop; merging shards in F0 order keeps the output
    // identical to the serial reference.
    std::vector<std::vector<std::pair<int, int>>> accepted(group.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long fi = 0; fi < count; ++fi) {
        FqMatrix tsF = sd.theta_s.apply_pow(f, group[fi], sd.q);
        auto& local = accepted[fi];
        for (long si = 0; si < count; ++si) {
            if (mat_mul(f, group[fi], mid[si]) == mat_mul(f, rhs[si], tsF))
                local.emplace_back(static_cast<int>(fi), static_cast<int>(si));
        }
    }

    JordanMemo jm{f, sd, {}};
    std::vector<TameParameterPoint> out;
    for (const auto& shard : accepted)
        for (auto [fi, si] : shard) {
            TameParameterPoint pt;
            pt.f0 = group[fi];
            pt.sigma0 = group[si];
            const auto& jp = jm.get(group[si]);
            pt.sigma_ss = jp.s;
            pt.sigma_u = jp.u;
            out.push_back(std::move(pt));
        }
    return out;
}

std::vector<TameParameterPoint> fiber_over_sigma(const std::vector<TameParameterPoint>& points,
                                                 const FqMatrix& xi) {
    std::vector<TameParameterPoint> out;
    for (const auto& pt : points)
        if (pt.sigma0 == xi) out.push_back(pt);
    return out;
}

std::vector<FqMatrix> twisted_centralizer(const GroupSpecFin& spec, const SemidirectData& sd,
                                          const FqMatrix& xi,
                                          const std::vector<FqMatrix>& group) {
    const FiniteField& f = spec.field;
    std::vector<FqMatrix> out;
    for (const auto& g : group) {
        FqMatrix lhs = mat_mul(f, g, xi);
        FqMatrix rhs = mat_mul(f, xi, sd.theta_s.apply(f, g));
        if (lhs == rhs) out.push_back(g);
    }
    return out;
}

unsigned long long dual_weyl_order(const GroupSpecFin& spec) {
    auto fact = [](int n) {
        unsigned long long r = 1;
        for (int i = 2; i <= n; ++i) r *= i;
        return r;
    };
    switch (spec.kind) {
        case fingrp::GroupKind::GL:
        case fingrp::GroupKind::SL: return fact(spec.n);
        case fingrp::GroupKind::Sp: {
            int m = spec.n / 2;
            return (1ULL << m) * fact(m);
        }
    }
    return 1;
}

IntPoly dual_chi(const GroupSpecFin& spec) {
    auto t_minus = [](int d) {
        std::vector<Int> c(d + 1, Int(0));
        c[0] = -1;
        c[d] = 1;
        return IntPoly(std::move(c));
    };
    IntPoly acc = IntPoly::constant(1);
    switch (spec.kind) {
        case fingrp::GroupKind::GL:
            for (int d = 1; d <= spec.n; ++d) acc = acc * t_minus(d);
            break;
        case fingrp::GroupKind::SL:
            for (int d = 2; d <= spec.n; ++d) acc = acc * t_minus(d);
            break;
        case fingrp::GroupKind::Sp:
            for (int d = 1; d <= spec.n / 2; ++d) acc = acc * t_minus(2 * d);
            break;
    }
    return acc;
}

BoundsReport check_point_bounds(const GroupSpecFin& spec, const SemidirectData& sd,
                                const TameParameterPoint& pt,
                                const dualgroup::ArithContext& ctx, const IntPoly& chi) {
    const FiniteField& f = spec.field;
    BoundsReport rep;

    unsigned long long n_weyl = dual_weyl_order(spec);
    Int q = sd.q;
    unsigned long expo = static_cast<unsigned long>(ctx.f) * n_weyl;
    Int bound_a = Int(ctx.e) * (int_pow(q, expo) - 1);

    Int order_ss = fingrp::element_order(f, pt.sigma_ss);
    rep.jordan_ok = boost::multiprecision::gcd(order_ss, Int(f.ell())) == 1 &&
                    bound_a % order_ss == 0;

    FqMatrix l_elem = l_element_matrix(f, sd, pt.sigma0);
    Int m_exp;
    if (spec.kind == fingrp::GroupKind::GL) {
        unsigned long nfact = 1;
        for (int i = 2; i <= spec.n; ++i) nfact *= i;
        m_exp = int_pow(q, nfact) - 1;
    } else {
        m_exp = bound_a;
    }
    rep.unipotent_ok = mat_is_unipotent(f, mat_pow(f, l_elem, m_exp));

    rep.sigma_semisimple = mat_is_identity(f, pt.sigma_u);
    if (rep.sigma_semisimple) {
        Int chi_q = chi.eval(q);
        Int bound_c = Int(ctx.e) * chi_q * chi_q;
        Int order_sigma = fingrp::element_order(f, l_elem);
        rep.estimate_ok = bound_c % order_sigma == 0;
    } else {
        rep.estimate_ok = true;
    }
    return rep;
}

namespace {

// Dense linear algebra over the finite field for the tangent computation.
struct FMat {
    int rows = 0, cols = 0;
    std::vector<int> e;
    FMat() = default;
    FMat(int r, int c) : rows(r), cols(c), e(size_t(r) * c, 0) {}
    int at(int i, int j) const { return e[size_t(i) * cols + j]; }
    int& at(int i, int j) { return e[size_t(i) * cols + j]; }
};

int f_rank(const FiniteField& f, FMat m) {
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.e[size_t(pivot) * m.cols + j], m.e[size_t(rank) * m.cols + j]);
        int pi = f.inv(m.at(rank, col));
        for (int j = 0; j < m.cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), pi);
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank) continue;
            int factor = m.at(r, col);
            if (factor == 0) continue;
            for (int j = 0; j < m.cols; ++j)
                m.at(r, j) = f.sub(m.at(r, j), f.mul(factor, m.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

// Basis of the Lie algebra of the kind inside M_n(F), as vectors in F^{n^2},
// together with a left inverse P of the basis matrix for coordinate reads.
struct LieBasis {
    std::vector<std::vector<int>> basis;  // each of length n^2
    FMat p;                               // d x n^2, P * B = I_d
};

LieBasis lie_basis(const GroupSpecFin& spec) {
    const FiniteField& f = spec.field;
    int n = spec.n;
    int nn = n * n;
    std::vector<std::vector<int>> basis;
    auto unit_mat = [&](int i, int j, int v) {
        std::vector<int> m(nn, 0);
        m[size_t(i) * n + j] = v;
        return m;
    };
    switch (spec.kind) {
        case fingrp::GroupKind::GL:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) basis.push_back(unit_mat(i, j, f.one()));
            break;
        case fingrp::GroupKind::SL:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) basis.push_back(unit_mat(i, j, f.one()));
            for (int i = 0; i + 1 < n; ++i) {
                std::vector<int> m(nn, 0);
                m[size_t(i) * n + i] = f.one();
                m[size_t(i + 1) * n + i + 1] = f.neg(f.one());
                basis.push_back(m);
            }
            break;
        case fingrp::GroupKind::Sp: {
            // Solve X^T J + J X = 0 coordinate-wise.
            FMat constraints(nn, nn);
            const FqMatrix& J = spec.form_j;
            // row (a,b): sum_k X_{k,a} J_{k,b} + J_{a,k} X_{k,b} = 0
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    int row = a * n + b;
                    for (int k = 0; k < n; ++k) {
                        constraints.at(row, k * n + a) =
                            f.add(constraints.at(row, k * n + a), J.at(k, b));
                        constraints.at(row, k * n + b) =
                            f.add(constraints.at(row, k * n + b), J.at(a, k));
                    }
                }
            // nullspace by elimination
            FMat m = constraints;
            std::vector<int> pivot_col;
            int rank = 0;
            for (int col = 0; col < nn && rank < nn; ++col) {
                int pivot = -1;
                for (int r = rank; r < m.rows; ++r)
                    if (m.at(r, col) != 0) {
                        pivot = r;
                        break;
                    }
                if (pivot < 0) continue;
                for (int j = 0; j < nn; ++j)
                    std::swap(m.e[size_t(pivot) * nn + j], m.e[size_t(rank) * nn + j]);
                int pi = f.inv(m.at(rank, col));
                for (int j = 0; j < nn; ++j) m.at(rank, j) = f.mul(m.at(rank, j), pi);
                for (int r = 0; r < m.rows; ++r) {
                    if (r == rank) continue;
                    int factor = m.at(r, col);
                    if (factor == 0) continue;
                    for (int j = 0; j < nn; ++j)
                        m.at(r, j) = f.sub(m.at(r, j), f.mul(factor, m.at(rank, j)));
                }
                pivot_col.push_back(col);
                ++rank;
            }
            std::vector<bool> is_pivot(nn, false);
            for (int c : pivot_col) is_pivot[c] = true;
            for (int free_col = 0; free_col < nn; ++free_col) {
                if (is_pivot[free_col]) continue;
                std::vector<int> v(nn, 0);
                v[free_col] = f.one();
                for (int r = 0; r < rank; ++r)
                    v[pivot_col[r]] = f.neg(m.at(r, free_col));
                basis.push_back(v);
            }
            break;
        }
    }
    // Left inverse: eliminate the (n^2 x d) basis matrix with row tracking.
    int d = static_cast<int>(basis.size());
    FMat aug(nn, d + nn);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < nn; ++i) aug.at(i, j) = basis[j][i];
    for (int i = 0; i < nn; ++i) aug.at(i, d + i) = f.one();
    int rank = 0;
    std::vector<int> pivot_rows;
    for (int col = 0; col < d && rank < nn; ++col) {
        int pivot = -1;
        for (int r = rank; r < nn; ++r)
            if (aug.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::logic_error("Lie basis is not independent");
        for (int j = 0; j < aug.cols; ++j)
            std::swap(aug.e[size_t(pivot) * aug.cols + j], aug.e[size_t(rank) * aug.cols + j]);
        int pi = f.inv(aug.at(rank, col));
        for (int j = 0; j < aug.cols; ++j) aug.at(rank, j) = f.mul(aug.at(rank, j), pi);
        for (int r = 0; r < nn; ++r) {
            if (r == rank) continue;
            int factor = aug.at(r, col);
            if (factor == 0) continue;
            for (int j = 0; j < aug.cols; ++j)
                aug.at(r, j) = f.sub(aug.at(r, j), f.mul(factor, aug.at(rank, j)));
        }
        ++rank;
    }
    LieBasis lb;
    lb.basis = std::move(basis);
    lb.p = FMat(d, nn);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < nn; ++j) lb.p.at(i, j) = aug.at(i, d + j);
    return lb;
}

// Matrix of X |-> A X B on the Lie basis (coordinates via the left inverse).
FMat ad_operator(const GroupSpecFin& spec, const LieBasis& lb, const FqMatrix& a,
                 const FqMatrix& b, const GroupAut& dtheta) {
    const FiniteField& f = spec.field;
    int n = spec.n;
    int d = static_cast<int>(lb.basis.size());
    FMat op(d, d);
    for (int j = 0; j < d; ++j) {
        FqMatrix x(n, std::vector<int>(lb.basis[j]));
        FqMatrix y = mat_mul(f, a, mat_mul(f, dtheta.apply(f, x), b));
        // coords = P * vec(y)
        for (int i = 0; i < d; ++i) {
            int acc = 0;
            for (int t = 0; t < n * n; ++t) {
                int pv = lb.p.at(i, t);
                if (pv == 0 || y.e[t] == 0) continue;
                acc = f.add(acc, f.mul(pv, y.e[t]));
            }
            op.at(i, j) = acc;
        }
        // verify the image stayed inside the Lie algebra
        std::vector<int> recon(n * n, 0);
        for (int i = 0; i < d; ++i) {
            if (op.at(i, j) == 0) continue;
            for (int t = 0; t < n * n; ++t)
                recon[t] = f.add(recon[t], f.mul(op.at(i, j), lb.basis[i][t]));
        }
        if (recon != y.e)
            throw BadActionError("adjoint action does not preserve the Lie algebra");
    }
    return op;
}

FMat fm_mul(const FiniteField& f, const FMat& a, const FMat& b) {
    FMat r(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            int av = a.at(i, k);
            if (av == 0) continue;
            for (int j = 0; j < b.cols; ++j)
                r.at(i, j) = f.add(r.at(i, j), f.mul(av, b.at(k, j)));
        }
    return r;
}

FMat fm_identity(const FiniteField& f, int d) {
    FMat m(d, d);
    for (int i = 0; i < d; ++i) m.at(i, i) = f.one();
    return m;
}

}  // namespace

TangentReport tangent_report(const GroupSpecFin& spec, const SemidirectData& sd,
                             const TameParameterPoint& pt) {
    const FiniteField& f = spec.field;
    LieBasis lb = lie_basis(spec);
    int d = static_cast<int>(lb.basis.size());

    FqMatrix s_inv = mat_inv(f, pt.sigma0);
    FqMatrix f_inv = mat_inv(f, pt.f0);
    FMat a_s = ad_operator(spec, lb, pt.sigma0, s_inv, sd.theta_s);
    FMat a_fr = ad_operator(spec, lb, pt.f0, f_inv, sd.theta_fr);

    // (I - A_s^q) X + (A_Fr - sum_{i<q} A_s^i) Y = 0
    FMat a_s_pow = fm_identity(f, d);
    FMat norm(d, d);
    for (long i = 0; i < sd.q; ++i) {
        for (int t = 0; t < d * d; ++t) norm.e[t] = f.add(norm.e[t], a_s_pow.e[t]);
        a_s_pow = fm_mul(f, a_s_pow, a_s);
    }
    FMat system(d, 2 * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            int m1 = f.sub(i == j ? f.one() : 0, a_s_pow.at(i, j));
            int m2 = f.sub(a_fr.at(i, j), norm.at(i, j));
            system.at(i, j) = m1;
            system.at(i, d + j) = m2;
        }
    TangentReport rep;
    rep.dim_tangent = 2 * d - f_rank(f, system);

    // H^0(Ad phi tensor omega): A_s v = v and q A_Fr v = v.
    int qf = f.from_int(sd.q);
    FMat h0(2 * d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            h0.at(i, j) = f.sub(a_s.at(i, j), i == j ? f.one() : 0);
            h0.at(d + i, j) = f.sub(f.mul(qf, a_fr.at(i, j)), i == j ? f.one() : 0);
        }
    rep.dim_h0_twist = d - f_rank(f, h0);
    rep.unobstructed = rep.dim_h0_twist == 0;
    return rep;
}

std::vector<PointAnalysis> analyze_points(const GroupSpecFin& spec, const SemidirectData& sd,
                                          const std::vector<TameParameterPoint>& points,
                                          const dualgroup::ArithContext& ctx,
                                          const IntPoly& chi) {
    std::vector<PointAnalysis> out(points.size());
    long count = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < count; ++i) {
        out[i].pt = points[i];
        out[i].tangent = tangent_report(spec, sd, points[i]);
        out[i].bounds = check_point_bounds(spec, sd, points[i], ctx, chi);
    }
    return out;
}

Sl2Parameter sl2_parameter(const std::vector<long>& weights, const FqMatrix& f_part,
                           const FiniteField& field, long q) {
    int n = static_cast<int>(weights.size());
    if (f_part.n != n) throw BadInputError("f_part size does not match the weight list");

    // Decompose into contiguous descending chains w, w-2, ..., -w.
    std::vector<int> block_sizes;
    int i = 0;
    while (i < n) {
        long w = weights[i];
        if (w < 0) throw BadInputError("weight chain must start at its highest weight");
        int d = static_cast<int>(w) + 1;
        if (i + d > n) throw BadInputError("truncated weight chain");
        for (int j = 0; j < d; ++j)
            if (weights[i + j] != w - 2 * j) throw BadInputError("malformed weight chain");
        block_sizes.push_back(d);
        i += d;
    }

    // Square root of q, extending the field if necessary.
    FiniteField work = field;
    int r = work.sqrt(work.from_int(q));
    bool extended = false;
    if (r < 0) {
        work = FiniteField(field.ell(), field.k() * 2);
        r = work.sqrt(work.from_int(q));
        extended = true;
        if (r < 0) throw BadInputError("no square root of q in the quadratic extension");
    }

    // Subfield embedding for f_part entries when the field was extended.
    std::vector<int> embed_table;
    if (extended) {
        // Map a generator g of the small field to a root of its minimal
        // polynomial in the big field; powers carry the rest.
        long small_q = field.size();
        int g = field.generator();
        // minimal polynomial of g over F_ell: prod_{i<k}(x - g^{ell^i})
        std::vector<int> conj;
        int cur = g;
        for (int t = 0; t < field.k(); ++t) {
            conj.push_back(cur);
            cur = field.frobenius(cur);
        }
        std::vector<int> minpoly{field.one()};  // coefficients in the SMALL field
        for (int root : conj) {
            std::vector<int> next(minpoly.size() + 1, 0);
            for (size_t t = 0; t < minpoly.size(); ++t) {
                next[t + 1] = field.add(next[t + 1], minpoly[t]);
                next[t] = field.add(next[t], field.mul(field.neg(root), minpoly[t]));
            }
            minpoly = next;
        }
        // Coefficients lie in the prime field; reinterpret and find a root.
        std::vector<int> mp_big(minpoly.size());
        for (size_t t = 0; t < minpoly.size(); ++t) {
            if (minpoly[t] >= field.ell())
                throw std::logic_error("minimal polynomial not over the prime field");
            mp_big[t] = work.from_int(minpoly[t]);
        }
        int image = -1;
        for (int cand = 1; cand < work.size(); ++cand) {
            int acc = 0;
            for (size_t t = mp_big.size(); t-- > 0;)
                acc = work.add(work.mul(acc, cand), mp_big[t]);
            if (acc == 0) {
                image = cand;
                break;
            }
        }
        if (image < 0) throw std::logic_error("no root of the minimal polynomial found");
        embed_table.assign(small_q, 0);
        for (long e = 0; e < small_q - 1; ++e)
            embed_table[field.pow(g, e)] = work.pow(image, e);
    }
    auto emb = [&](int x) { return extended ? embed_table[x] : x; };

    // sigma0 = lambda(U): Pascal blocks. F0 = lambda(S) * f_part.
    FqMatrix sigma0 = FqMatrix::zero(n);
    int off = 0;
    for (int d : block_sizes) {
        for (int a = 0; a < d; ++a)
            for (int b = a; b < d; ++b) {
                // binomial C(b, a) mod ell
                Int bin = 1;
                for (int t = 0; t < a; ++t) bin = bin * (b - t) / (t + 1);
                sigma0.at(off + a, off + b) =
                    work.from_int((bin % work.ell()).convert_to<long long>());
            }
        off += d;
    }
    FqMatrix lambda_s = FqMatrix::zero(n);
    for (int t = 0; t < n; ++t) lambda_s.at(t, t) = work.pow(r, weights[t]);
    FqMatrix f_embedded = FqMatrix::zero(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) f_embedded.at(a, b) = emb(f_part.at(a, b));
    FqMatrix f0 = mat_mul(work, lambda_s, f_embedded);

    // The defining relation (trivial twists) must hold.
    FqMatrix lhs = mat_mul(work, f0, mat_mul(work, sigma0, mat_inv(work, f0)));
    FqMatrix rhs = mat_pow(work, sigma0, Int(q));
    if (lhs != rhs)
        throw BadInputError("f_part does not centralize lambda: defining relation fails");

    Sl2Parameter out{TameParameterPoint{}, work, r};
    out.pt.f0 = f0;
    out.pt.sigma0 = sigma0;
    auto jp = fingrp::jordan(work, sigma0);
    out.pt.sigma_ss = jp.s;
    out.pt.sigma_u = jp.u;
    return out;
}

std::vector<InertialClass> inertial_classes(const GroupSpecFin& spec,
                                            const std::vector<TameParameterPoint>& points,
                                            const std::vector<FqMatrix>& group) {
    if (spec.kind != fingrp::GroupKind::GL)
        throw NotSupportedError("component labels are only computed for GL kinds");
    const FiniteField& f = spec.field;
    std::map<FqMatrix, FqMatrix> rep_of;  // sigma_ss -> canonical class rep
    std::map<FqMatrix, std::uint64_t> counts;
    std::vector<FqMatrix> inverses;
    inverses.reserve(group.size());
    for (const auto& g : group) inverses.push_back(mat_inv(f, g));
    for (const auto& pt : points) {
        auto it = rep_of.find(pt.sigma_ss);
        if (it == rep_of.end()) {
            FqMatrix best = pt.sigma_ss;
            for (size_t i = 0; i < group.size(); ++i) {
                FqMatrix conj = mat_mul(f, group[i], mat_mul(f, pt.sigma_ss, inverses[i]));
                if (conj < best) best = conj;
            }
            it = rep_of.emplace(pt.sigma_ss, best).first;
        }
        ++counts[it->second];
    }
    std::vector<InertialClass> out;
    for (const auto& [rep, count] : counts) out.push_back(InertialClass{rep, 0, count});
    return out;
}

Int twisted_torus_orders(int rank, const exactalg::IntMatrix& beta_on_chars,
                         const FiniteField& field, long q, const IntPoly& chi) {
    if (rank < 1 || rank > 3) throw ValidationError("torus rank must be 1..3");
    if (beta_on_chars.rows() != rank || beta_on_chars.cols() != rank)
        throw ValidationError("beta matrix size mismatch");
    unsigned long long units = static_cast<unsigned long long>(field.size() - 1);
    unsigned long long total = 1;
    for (int i = 0; i < rank; ++i) total *= units;
    if (total > 10'000'000ull) throw SizeGuardError("torus enumeration too large");

    Int chi_q = chi.eval(q);
    Int max_order = 0;
    bool done = false;
    std::vector<int> idx(rank, 1);  // indices of nonzero field elements
    while (!done) {
        // beta(t)_k = prod_j t_j^{B[j][k]}
        bool fixed = true;
        for (int kk = 0; kk < rank && fixed; ++kk) {
            int acc = field.one();
            for (int j = 0; j < rank; ++j) {
                long long e = static_cast<long long>(beta_on_chars.at(j, kk).convert_to<long long>());
                acc = field.mul(acc, field.pow(idx[j], e));
            }
            if (acc != field.pow(idx[kk], q)) fixed = false;
        }
        if (fixed) {
            Int ord = 1;
            for (int j = 0; j < rank; ++j) {
                Int oj = field.element_order(idx[j]);
                ord = ord * oj / boost::multiprecision::gcd(ord, oj);
            }
            if (chi_q % ord != 0)
                throw ValidationError("torus element order does not divide chi(q)");
            if (ord > max_order) max_order = ord;
        }
        // odometer over nonzero indices
        int pos = rank - 1;
        while (pos >= 0) {
            if (++idx[pos] < field.size()) break;
            idx[pos] = 1;
            --pos;
        }
        if (pos < 0) done = true;
    }
    return max_order;
}

namespace {

using Tuple = std::vector<long long>;

struct FinAb {
    std::vector<long long> d;  // cyclic orders, >= 1

    Tuple zero() const { return Tuple(d.size(), 0); }
    Tuple add(const Tuple& a, const Tuple& b) const {
        Tuple r(d.size());
        for (size_t i = 0; i < d.size(); ++i) r[i] = (a[i] + b[i]) % d[i];
        return r;
    }
    Tuple neg(const Tuple& a) const {
        Tuple r(d.size());
        for (size_t i = 0; i < d.size(); ++i) r[i] = (d[i] - a[i]) % d[i];
        return r;
    }
    Tuple smul(long long k, const Tuple& a) const {
        Tuple r(d.size());
        for (size_t i = 0; i < d.size(); ++i) {
            long long v = (a[i] * (k % d[i])) % d[i];
            r[i] = (v + d[i]) % d[i];
        }
        return r;
    }
    Tuple apply(const exactalg::IntMatrix& m, const Tuple& a) const {
        Tuple r(d.size(), 0);
        for (size_t i = 0; i < d.size(); ++i) {
            long long acc = 0;
            for (size_t j = 0; j < d.size(); ++j) {
                long long mij = m.at(static_cast<int>(i), static_cast<int>(j)).convert_to<long long>();
                acc += ((mij % d[i]) + d[i]) % d[i] * (a[j] % d[i]) % d[i];
                acc %= d[i];
            }
            r[i] = ((acc % d[i]) + d[i]) % d[i];
        }
        return r;
    }
    long long order_of(const Tuple& a) const {
        long long ord = 1;
        for (size_t i = 0; i < d.size(); ++i) {
            long long oi = d[i] / std::gcd(d[i], a[i] == 0 ? d[i] : a[i]);
            ord = std::lcm(ord, oi);
        }
        return ord;
    }
    std::vector<Tuple> all_elements() const {
        std::uint64_t total = 1;
        for (long long di : d) total *= static_cast<std::uint64_t>(di);
        if (total > 1'000'000) throw SizeGuardError("abelian group too large");
        std::vector<Tuple> out;
        out.reserve(total);
        Tuple cur = zero();
        while (true) {
            out.push_back(cur);
            int pos = static_cast<int>(d.size()) - 1;
            while (pos >= 0 && ++cur[pos] >= d[pos]) {
                cur[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        return out;
    }
};

// Invariant factors of the quotient S/B from element-order statistics.
AbelianStructure subquotient_structure(const FinAb& a, const std::vector<Tuple>& s_elems,
                                       const std::vector<Tuple>& b_elems) {
    std::set<Tuple> b_set(b_elems.begin(), b_elems.end());
    // canonical coset representatives
    std::set<Tuple> reps;
    std::map<Tuple, Tuple> rep_of;
    for (const auto& x : s_elems) {
        Tuple best = x;
        for (const auto& b : b_set) {
            Tuple cand = a.add(x, b);
            if (cand < best) best = cand;
        }
        rep_of[x] = best;
        reps.insert(best);
    }
    std::uint64_t q_order = reps.size();
    AbelianStructure out;
    if (q_order <= 1) return out;

    auto coset_is_zero = [&](const Tuple& x) { return b_set.count(x) > 0; };

    // Prime factorization of |Q|.
    std::vector<long long> primes;
    {
        std::uint64_t rem = q_order;
        for (long long pr = 2; static_cast<std::uint64_t>(pr) * pr <= rem; ++pr)
            if (rem % pr == 0) {
                primes.push_back(pr);
                while (rem % pr == 0) rem /= pr;
            }
        if (rem > 1) primes.push_back(static_cast<long long>(rem));
    }

    // For each prime, the partition of the p-primary part of Q from the counts
    // N_k = #{x in Q : p^k x = 0}; #parts >= k equals log_p(N_k / N_{k-1}).
    std::map<long long, std::vector<int>> partitions;  // prime -> descending partition
    for (long long pr : primes) {
        std::vector<int> parts_ge;
        std::uint64_t prev = 1;
        long long pk = 1;
        while (true) {
            pk *= pr;
            std::uint64_t cnt = 0;
            for (const auto& r : reps)
                if (coset_is_zero(a.smul(pk, r))) ++cnt;
            std::uint64_t ratio = cnt / prev;
            int logv = 0;
            while (ratio > 1) {
                ratio /= static_cast<std::uint64_t>(pr);
                ++logv;
            }
            if (logv == 0) break;
            parts_ge.push_back(logv);
            prev = cnt;
        }
        // partition lambda (descending): lambda_i = #{k : parts_ge[k] >= i}
        std::vector<int> partition;
        if (!parts_ge.empty()) {
            for (int i = 1; i <= parts_ge[0]; ++i) {
                int li = 0;
                for (int pg : parts_ge)
                    if (pg >= i) ++li;
                partition.push_back(li);
            }
        }
        std::sort(partition.rbegin(), partition.rend());
        partitions[pr] = partition;
    }

    size_t max_len = 0;
    for (auto& [pr, part] : partitions) max_len = std::max(max_len, part.size());
    std::vector<Int> factors(max_len, Int(1));
    for (auto& [pr, part] : partitions)
        for (size_t i = 0; i < part.size(); ++i) factors[i] *= int_pow(Int(pr), part[i]);
    std::reverse(factors.begin(), factors.end());  // divisibility order d_1 | d_2 | ...
    for (auto& v : factors)
        if (v > 1) out.invariant_factors.push_back(v);
    return out;
}

}  // namespace

CyclicCohomology cyclic_cohomology(const std::vector<long>& a_factors,
                                   const exactalg::IntMatrix& sigma_action,
                                   const exactalg::IntMatrix& fr_action, long q, long m_order,
                                   long p) {
    FinAb a;
    for (long v : a_factors) {
        if (v < 1) throw ValidationError("invariant factors must be positive");
        a.d.push_back(v);
    }
    int r = static_cast<int>(a.d.size());
    if (sigma_action.rows() != r || fr_action.rows() != r)
        throw ValidationError("action matrix size mismatch");
    if (m_order < 1 || q < 1 || p < 2) throw ValidationError("bad parameters");

    std::vector<Tuple> elems = a.all_elements();

    // sigma^M = id and fr sigma = sigma^q fr on all elements.
    auto sigma_pow = [&](const Tuple& x, long k) {
        Tuple cur = x;
        for (long t = 0; t < k; ++t) cur = a.apply(sigma_action, cur);
        return cur;
    };
    for (const auto& x : elems) {
        if (sigma_pow(x, m_order) != x)
            throw BadActionError("sigma does not have order dividing M");
        if (a.apply(fr_action, a.apply(sigma_action, x)) !=
            sigma_pow(a.apply(fr_action, x), q))
            throw BadActionError("fr sigma != sigma^q fr on A");
    }

    auto norm_m = [&](const Tuple& x) {
        Tuple acc = a.zero();
        Tuple cur = x;
        for (long t = 0; t < m_order; ++t) {
            acc = a.add(acc, cur);
            cur = a.apply(sigma_action, cur);
        }
        return acc;
    };
    auto norm_q_sum = [&](const Tuple& x) {
        Tuple acc = a.zero();
        Tuple cur = x;
        for (long t = 0; t < q; ++t) {
            acc = a.add(acc, cur);
            cur = a.apply(sigma_action, cur);
        }
        return acc;
    };

    // S = N_M^{-1}(A[p']), B = A(sigma).
    std::vector<Tuple> s_elems;
    for (const auto& x : elems) {
        long long ord = a.order_of(norm_m(x));
        if (ord % p != 0) s_elems.push_back(x);
    }
    std::set<Tuple> b_set;
    for (const auto& x : elems) b_set.insert(a.add(x, a.neg(a.apply(sigma_action, x))));
    std::vector<Tuple> b_elems(b_set.begin(), b_set.end());

    CyclicCohomology out;
    out.h1_inertia = subquotient_structure(a, s_elems, b_elems);

    // Fr acts on classes by x -> fr(N_q(x)); coinvariants divide out
    // {T(x) - x} together with B.
    std::set<Tuple> s_set(s_elems.begin(), s_elems.end());
    std::set<Tuple> b2_gen = b_set;
    for (const auto& x : s_elems) {
        Tuple tx = a.apply(fr_action, norm_q_sum(x));
        if (!s_set.count(tx))
            throw BadActionError("Fr action does not preserve the cocycle subgroup");
        b2_gen.insert(a.add(tx, a.neg(x)));
    }
    // subgroup closure
    std::set<Tuple> b2 = b2_gen;
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Tuple> cur(b2.begin(), b2.end());
        for (const auto& x : cur)
            for (const auto& y : cur) {
                Tuple s2 = a.add(x, y);
                if (b2.insert(s2).second) grew = true;
            }
    }
    std::vector<Tuple> b2_elems(b2.begin(), b2.end());
    out.h1_total = subquotient_structure(a, s_elems, b2_elems);
    return out;
}

std::vector<TwistedClass> h1_finite(long m, const std::vector<int>& sigma,
                                    const fingrp::GroupTable& table, std::uint64_t guard) {
    std::uint64_t size = table.elements.size();
    if (m < 1 || static_cast<std::uint64_t>(m) * size > guard)
        throw SizeGuardError("h1_finite enumeration too large");
    if (sigma.size() != size) throw ValidationError("action permutation size mismatch");

    // action order must divide m
    {
        std::vector<int> cur(sigma.size());
        std::iota(cur.begin(), cur.end(), 0);
        for (long t = 0; t < m; ++t) {
            std::vector<int> next(cur.size());
            for (size_t i = 0; i < cur.size(); ++i) next[i] = sigma[cur[i]];
            cur = next;
        }
        for (size_t i = 0; i < cur.size(); ++i)
            if (cur[i] != static_cast<int>(i))
                throw BadActionError("action order does not divide m");
    }

    // Z^1 = {h : h sigma(h) ... sigma^{m-1}(h) = 1}
    int id_index = -1;
    for (size_t i = 0; i < size; ++i)
        if (fingrp::mat_is_identity(*table.field, table.elements[i])) {
            id_index = static_cast<int>(i);
            break;
        }
    if (id_index < 0) throw ValidationError("group table does not contain the identity");

    std::vector<int> cocycles;
    for (size_t h = 0; h < size; ++h) {
        int prod = static_cast<int>(h);
        int cur = static_cast<int>(h);
        for (long t = 1; t < m; ++t) {
            cur = sigma[cur];
            prod = table.mul(prod, cur);
        }
        if (prod == id_index) cocycles.push_back(static_cast<int>(h));
    }

    // classes under h ~ g h sigma(g)^{-1}
    std::set<int> pending(cocycles.begin(), cocycles.end());
    std::vector<TwistedClass> classes;
    while (!pending.empty()) {
        int h = *pending.begin();
        std::set<int> orbit;
        for (size_t g = 0; g < size; ++g) {
            int gh = table.mul(static_cast<int>(g), h);
            int sg_inv = table.inv(sigma[g]);
            orbit.insert(table.mul(gh, sg_inv));
        }
        TwistedClass cls;
        cls.rep_index = *orbit.begin();
        cls.size = orbit.size();
        classes.push_back(cls);
        for (int x : orbit) pending.erase(x);
    }
    std::sort(classes.begin(), classes.end(),
              [](const TwistedClass& a, const TwistedClass& b) { return a.rep_index < b.rep_index; });
    return classes;
}

}  // namespace langparams::moduli
