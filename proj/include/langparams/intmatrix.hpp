// intmatrix.hpp -- exact integer matrices: Smith normal form, saturated integer
// kernels, characteristic polynomials.
#pragma once

#include "langparams/bigint.hpp"
#include "langparams/intpoly.hpp"

#include <vector>

namespace langparams::exactalg {

class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(size_t(rows) * cols, Int(0)) {}
    IntMatrix(int rows, int cols, std::vector<Int> entries);
    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Int& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }
    Int& at(int i, int j) { return e_[size_t(i) * cols_ + j]; }
    const std::vector<Int>& entries() const { return e_; }

    bool operator==(const IntMatrix& o) const;
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix transpose() const;
    IntMatrix pow(unsigned long k) const;
    bool is_identity() const;
    bool is_zero() const;

    // Least m >= 1 with M^m = I, probing up to `bound`; 0 if none found.
    unsigned long finite_order(unsigned long bound = 10000) const;

    // det(T*I - M), exact (Faddeev-LeVerrier).
    IntPoly char_poly() const;
    Int det() const;

  private:
    int rows_, cols_;
    std::vector<Int> e_;
};

struct SmithNormalForm {
    IntMatrix u, d, v;  // u * m * v = d, u and v unimodular
};

// Invariant factors nonnegative with d_i | d_{i+1}.
SmithNormalForm smith_normal_form(const IntMatrix& m);

// Rows form a basis of the saturated lattice {v : M v = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

// Nontrivial invariant factors (entries > 1) of the Smith form, plus the count
// of zero diagonal entries, describing coker(M : Z^cols -> Z^rows).
struct CokernelStructure {
    long free_rank = 0;
    std::vector<Int> torsion;  // invariant factors > 1, in divisibility order
};
CokernelStructure cokernel_structure(const IntMatrix& m);

}  // namespace langparams::exactalg
