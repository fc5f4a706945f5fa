// kostant.hpp -- principal sl2-triples, nilpotent centralizers, and the exact
// Kostant-section determinant identity with its mod-ell reduction.
#pragma once

#include "langparams/bigint.hpp"
#include "langparams/finfield.hpp"
#include "langparams/intpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace langparams::kostant {

using exactalg::Int;
using exactalg::IntPoly;
using exactalg::Rat;

struct QMatrix {
    int rows = 0, cols = 0;
    std::vector<Rat> e;

    QMatrix() = default;
    QMatrix(int r, int c) : rows(r), cols(c), e(size_t(r) * c) {}
    static QMatrix identity(int n);

    const Rat& at(int i, int j) const { return e[size_t(i) * cols + j]; }
    Rat& at(int i, int j) { return e[size_t(i) * cols + j]; }

    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix operator*(const Rat& k) const;
    QMatrix transpose() const;
    bool operator==(const QMatrix& o) const { return rows == o.rows && cols == o.cols && e == o.e; }
};

// [a, b] = ab - ba.
QMatrix bracket(const QMatrix& a, const QMatrix& b);

struct KostantFrame {
    std::string algebra;  // sl2..sl5, sp4, gl2..gl5
    int n = 0;            // ambient matrix size
    bool gl_center = false;
    QMatrix e, h, f;
    std::vector<QMatrix> centralizer_basis;  // ad(E)-kernel inside the algebra
    std::vector<long> weights;               // ad(H)-eigenvalues on the basis
    std::vector<long> h_diag;                // integer diagonal of H
};

KostantFrame principal_triple(const std::string& label);

struct PinnedOuter {
    QMatrix j;  // beta(X) = -J X^T J^{-1}
    int order = 2;
};

// The pinned outer involution where one exists (sl_n / gl_n with n >= 3).
std::optional<PinnedOuter> pinned_outer(const KostantFrame& frame);

QMatrix apply_outer(const PinnedOuter& beta, const QMatrix& x);

// chi of the adjoint form matched to the frame (one extra T-1 or T+1 factor
// for the gl central line).
IntPoly frame_chi(const KostantFrame& frame, bool twisted);

struct KostantDetReport {
    Rat det;
    Int chi_at_t2;
    int sign;  // +1 or -1 with det = sign * chi(t^2)
};

// det(t^2 Ad_{lambda(t)} Ad_beta - id | centralizer), beta optional; asserts
// |det| = |chi(t^2)| and reports the sign.
KostantDetReport kostant_determinant(const KostantFrame& frame,
                                     const PinnedOuter* beta, const Rat& t);

// Mod-ell reduction: whether det(q Ad_{lambda(sqrt q)} Ad_beta - id) != 0 over
// F_{ell^k}; extends the field when q has no square root.
bool regular_unipotent_check(const KostantFrame& frame, const PinnedOuter* beta,
                             const fingrp::FiniteField& field, long q);

}  // namespace langparams::kostant
