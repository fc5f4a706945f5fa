// fingroup.hpp -- small matrix groups over finite fields: enumeration, element
// orders, Jordan decomposition, conjugacy utilities.
#pragma once

#include "langparams/bigint.hpp"
#include "langparams/finfield.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace langparams::fingrp {

enum class GroupKind { GL, SL, Sp };

struct FqMatrix {
    int n = 0;
    std::vector<int> e;  // field element indices, row-major

    FqMatrix() = default;
    FqMatrix(int n_, std::vector<int> entries) : n(n_), e(std::move(entries)) {}
    static FqMatrix identity(const FiniteField& f, int n);
    static FqMatrix zero(int n) { return FqMatrix(n, std::vector<int>(size_t(n) * n, 0)); }

    int at(int i, int j) const { return e[size_t(i) * n + j]; }
    int& at(int i, int j) { return e[size_t(i) * n + j]; }

    bool operator==(const FqMatrix& o) const { return n == o.n && e == o.e; }
    bool operator!=(const FqMatrix& o) const { return !(*this == o); }
    bool operator<(const FqMatrix& o) const { return e < o.e; }
};

FqMatrix mat_mul(const FiniteField& f, const FqMatrix& a, const FqMatrix& b);
FqMatrix mat_transpose(const FqMatrix& a);
int mat_det(const FiniteField& f, const FqMatrix& a);
// Inverse; throws ValidationError if singular.
FqMatrix mat_inv(const FiniteField& f, const FqMatrix& a);
FqMatrix mat_pow(const FiniteField& f, const FqMatrix& a, const Int& e);
bool mat_is_identity(const FiniteField& f, const FqMatrix& a);
// (a - I)^n == 0, i.e. all eigenvalues 1.
bool mat_is_unipotent(const FiniteField& f, const FqMatrix& a);

struct GroupSpecFin {
    GroupKind kind;
    int n;
    FiniteField field;
    FqMatrix form_j;  // Sp only: the standard alternating form

    GroupSpecFin(GroupKind k, int n_, FiniteField f);
    bool contains(const FqMatrix& g) const;
    // Group order by the q^N * chi(q) formulas.
    Int order_formula() const;
};

inline constexpr std::uint64_t kGroupEnumerationCap = 1'000'000;

// All elements in row-major lexicographic order on field-element indices.
// Throws GroupTooLargeError when the order formula exceeds the cap.
std::vector<FqMatrix> enumerate_group(const GroupSpecFin& spec,
                                      std::uint64_t cap = kGroupEnumerationCap);

// Least m >= 1 with g^m = I. `group_order_hint`, when nonzero, enables the
// factor-and-descend path; otherwise the order is found by direct iteration.
Int element_order(const FiniteField& f, const FqMatrix& g, const Int& group_order_hint = 0);

struct JordanParts {
    FqMatrix s, u;  // g = s*u = u*s, s semisimple of prime-to-ell order, u unipotent
};
JordanParts jordan(const FiniteField& f, const FqMatrix& g);

struct ConjugacyClass {
    FqMatrix representative;  // canonically least element of the orbit
    std::uint64_t size = 0;
    std::vector<FqMatrix> members;
};

// Orbit partition of `elements` under conjugation by `subgroup`.
std::vector<ConjugacyClass> conjugacy_reps(const FiniteField& f,
                                           const std::vector<FqMatrix>& elements,
                                           const std::vector<FqMatrix>& subgroup);

// Index-based multiplication table over an explicit element list.
struct GroupTable {
    const FiniteField* field;
    std::vector<FqMatrix> elements;
    int index_of(const FqMatrix& g) const;
    int mul(int a, int b) const;
    int inv(int a) const;

    explicit GroupTable(const FiniteField& f, std::vector<FqMatrix> elems);

  private:
    std::vector<std::pair<FqMatrix, int>> sorted_;
};

}  // namespace langparams::fingrp
