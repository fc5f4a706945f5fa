// rootdata.hpp -- based root data for classical and exceptional types, Weyl
// group enumeration, fundamental degrees, and the twisted characteristic
// polynomials chi, chi*, chi' with their twisted Coxeter numbers.
#pragma once

#include "langparams/intmatrix.hpp"
#include "langparams/intpoly.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace langparams::rootdata {

using exactalg::IntMatrix;
using exactalg::IntPoly;

using Vec = std::vector<long long>;

// Dense square matrix over machine integers; entries of Weyl/automorphism
// matrices on our lattices stay far below overflow.
struct SmallMat {
    int n = 0;
    std::vector<long long> e;  // row-major

    SmallMat() = default;
    explicit SmallMat(int n_) : n(n_), e(size_t(n_) * n_, 0) {}
    static SmallMat identity(int n);

    long long at(int i, int j) const { return e[size_t(i) * n + j]; }
    long long& at(int i, int j) { return e[size_t(i) * n + j]; }

    bool operator==(const SmallMat& o) const { return n == o.n && e == o.e; }
    bool operator<(const SmallMat& o) const { return e < o.e; }

    SmallMat operator*(const SmallMat& o) const;
    Vec apply(const Vec& v) const;
    bool is_identity() const;
    SmallMat inverse_of_finite_order(unsigned long order_bound = 10000) const;
    unsigned long order(unsigned long bound = 10000) const;

    IntMatrix to_int_matrix() const;
    static SmallMat from_int_matrix(const IntMatrix& m);
};

enum class Family : char {
    A = 'A',
    B = 'B',
    C = 'C',
    D = 'D',
    G = 'G',
    F = 'F',
    E = 'E',
    GL = 'g',
    Torus = 'T',
};

struct FactorInfo {
    std::string label;
    Family family;
    int family_rank;    // the n of A_n, B_n, ..., E_n, GL_n
    int lat_offset;     // first lattice coordinate of this block
    int lat_rank;       // lattice coordinates spanned by the block
    int simple_offset;  // position of its simple roots in simple_indices
    int simple_count;
    bool cartan_basis;  // realized in the simple-root basis
};

struct BasedRootDatum {
    std::string label;
    int rank = 0;
    std::vector<Vec> roots;
    std::vector<Vec> coroots;        // dual-basis coordinates, aligned with roots
    std::vector<int> simple_indices;
    IntMatrix cartan;                // cartan[i][j] = <alpha_j, alpha_i^vee>
    std::vector<FactorInfo> factors; // non-torus blocks
    int central_rank = 0;

    int semisimple_rank() const { return static_cast<int>(simple_indices.size()); }
    long positive_root_count() const { return static_cast<long>(roots.size()) / 2; }
    // |Weyl| by the classical order formulas.
    unsigned long long weyl_order_formula() const;
};

struct DiagramAutomorphism {
    IntMatrix lattice_matrix;
    std::vector<int> simple_perm;
    unsigned long order = 1;

    bool is_trivial() const { return lattice_matrix.is_identity(); }
};

// Supported labels: GL<n>, SL<n>, Sp<2n>, SO<n>, A<n>, B<n>, C<n>, D<n>, G2,
// F4, E6, E7, E8, T<r>, and `x`-separated products thereof. Classical ranks
// are capped at 12.
BasedRootDatum build_root_datum(const std::string& spec);

// The same family with the D4 block realized in the simple-root basis, which
// is the only realization stable under triality.
BasedRootDatum build_root_datum_for_twist(const std::string& spec, int twist_order);

// Product assembly with a twist-order hint per component.
BasedRootDatum build_product(const std::vector<std::pair<std::string, int>>& components);

DiagramAutomorphism trivial_automorphism(const BasedRootDatum& d);

// The standard diagram automorphism of the given order (2 for A/GL/D/E6 and
// rank-1 tori, 3 for D4 in the simple-root realization). Throws
// UnsupportedTypeError when no such automorphism exists.
DiagramAutomorphism standard_twist(const BasedRootDatum& d, int order);

// Block-diagonal join matching a product datum built from the same components.
DiagramAutomorphism product_twist(const BasedRootDatum& product,
                                  const std::vector<DiagramAutomorphism>& parts);

// Checks the root-permutation and Delta-to-Delta invariants; derives
// simple_perm and the exact order.
DiagramAutomorphism make_automorphism(const BasedRootDatum& d, const IntMatrix& m);

inline constexpr unsigned long kDefaultWeylBound = 2'000'000;

// All Weyl elements as matrices on X by breadth-first closure over the simple
// reflections; throws WeylTooLargeError beyond `bound`.
std::vector<SmallMat> weyl_elements(const BasedRootDatum& d,
                                    unsigned long bound = kDefaultWeylBound);

// Table-driven degrees for an irreducible datum or torus (one entry "1" per
// central-torus rank), ascending.
std::vector<int> fundamental_degrees(const BasedRootDatum& d);

enum class ChiMethod { Auto, Oracle, Table };

// Twisted characteristic polynomial chi_{G,beta}: the primitive lcm over
// omega in Weyl of det(T*I - omega*beta^{-1} | X), equal to the degree-table
// product for recognized cases.
IntPoly chi_twisted(const BasedRootDatum& d, const DiagramAutomorphism& beta,
                    ChiMethod method = ChiMethod::Auto,
                    unsigned long weyl_bound = kDefaultWeylBound);

// Largest n with Phi_n | chi; throws DegenerateChiError on constants.
int twisted_coxeter(const IntPoly& chi);

// chi* = prod_{n <= h} Phi_n for h the twisted Coxeter number of chi.
IntPoly chi_star_from_chi(const IntPoly& chi);
IntPoly chi_star(const BasedRootDatum& d, const DiagramAutomorphism& beta);

// T^12 - 1 for the triality form of D4; chi itself otherwise.
IntPoly chi_prime(const BasedRootDatum& d, const DiagramAutomorphism& beta);

// True when (d, beta) is a single D4-type block carrying an order-3 twist.
bool is_triality(const BasedRootDatum& d, const DiagramAutomorphism& beta);

}  // namespace langparams::rootdata
