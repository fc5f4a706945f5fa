// dualgroup.hpp -- L-group descriptors with Frobenius cycle structure, the
// global chi product, Chevalley-Steinberg counts, banal prime sets, torus
// cocycle groups and GIT component descriptors.
#pragma once

#include "langparams/intmatrix.hpp"
#include "langparams/intpoly.hpp"
#include "langparams/rootdata.hpp"

#include <optional>
#include <set>
#include <vector>

namespace langparams::dualgroup {

using exactalg::Int;
using exactalg::IntMatrix;
using exactalg::IntPoly;

struct ArithContext {
    Int p = 2;   // residue characteristic
    Int q = 2;   // residue cardinality, a power of p
    long e = 1;  // tame ramification index of ker(W_F -> Out(G^))
    long f = 1;  // residue degree of the same extension

    void validate() const;
};

struct LFactor {
    rootdata::BasedRootDatum datum;        // one Frobenius orbit, single copy
    long f = 1;                            // cycle length of Frobenius
    rootdata::DiagramAutomorphism twist;   // induced by Fr^f on the copy
};

struct LGroupSpec {
    std::vector<LFactor> factors;
    long abelian_rank = 0;
    IntMatrix abelian_fr;  // finite-order action on the abelian character lattice
    ArithContext context;

    void validate() const;
};

// chi_{G^,Fr}(T) = chi_ab(T) * prod_i chi_{G_i,twist_i}(T^{f_i}).
IntPoly chi_global(const LGroupSpec& spec);

// Same product with the triality-corrected chi' in place of chi per factor.
IntPoly chi_global_corrected(const LGroupSpec& spec);

// q^N * chi(q) with N = sum_i f_i * |Phi^+(factor_i)|; throws
// NonPositiveCountError when the evaluation is not positive.
Int chevalley_steinberg(const LGroupSpec& spec, const Int& q);

struct BanalReport {
    IntPoly chi;
    IntPoly chi_star;
    int h = 1;  // twisted Coxeter number of chi
    std::set<Int> excluded_general;                   // primes of e * chi*(q), minus p
    std::optional<std::set<Int>> excluded_classical;  // primes of e * chi(q) * h1!, minus p
    std::set<Int> g_nonbanal;                         // primes of chi(q), minus p
    std::optional<IntPoly> chi_prime;                 // triality-corrected chi, when distinct
    std::optional<std::set<Int>> excluded_corrected;  // primes of e * chi'(q), minus p
};

BanalReport banal_report(const LGroupSpec& spec);

struct BanalComparison {
    Int prime;
    bool lg_banal_excluded;
    bool g_nonbanal;
};

// Membership flags for primes h < l <= bound, l != p; throws
// NotApplicableError when an exceptional or triality factor is present.
std::vector<BanalComparison> compare_banal(const LGroupSpec& spec, long bound);

struct CocycleGroupStructure {
    long free_rank = 0;
    std::vector<Int> torsion;  // nontrivial invariant factors, divisibility order

    // Number of points over a field with m = |k^x| elements in the
    // multiplicative group: (m)^free * prod gcd(d_i, m).
    Int point_count(const Int& unit_group_order) const;
};

// Character-lattice structure of Z^1_alpha((W_F/P_F)^0, T): the cokernel of
// the transpose of (F,s) |-> F * a_fr(s) * a_s^q(F)^{-1} * N_q(s)^{-1}.
// Throws BadActionError unless a_fr * a_s * a_fr^{-1} = a_s^q.
CocycleGroupStructure torus_cocycle_group(const IntMatrix& a_fr, const IntMatrix& a_s,
                                          long q);

struct GitDescriptor {
    int invariant_rank = 0;               // rank of ker(beta - 1) on characters
    unsigned long long weyl_fixed = 0;    // order of the beta-fixed subgroup of Omega
};

GitDescriptor git_component_descriptor(int t_rank, const IntMatrix& beta_on_chars,
                                       const std::vector<IntMatrix>& weyl);

// Untwisted Coxeter number h_{G^,1}: the largest fundamental degree over all
// simple factors (1 for a torus).
int untwisted_coxeter_number(const LGroupSpec& spec);

bool has_exceptional_or_triality_factor(const LGroupSpec& spec);

}  // namespace langparams::dualgroup
