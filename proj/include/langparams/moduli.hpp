// moduli.hpp -- brute-force enumeration of the tame parameter scheme over a
// finite field, fiber/torsor analysis, tangent and obstruction linear algebra,
// bound checks, component grouping, SL2-form parameters, and finite cocycle
// cohomology.
#pragma once

#include "langparams/bigint.hpp"
#include "langparams/dualgroup.hpp"
#include "langparams/fingroup.hpp"
#include "langparams/intpoly.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace langparams::moduli {

using exactalg::Int;
using exactalg::IntPoly;
using fingrp::FiniteField;
using fingrp::FqMatrix;
using fingrp::GroupSpecFin;

// Finite-order automorphism of the matrix group: identity or conjugation by a
// fixed invertible matrix.
struct GroupAut {
    enum class Kind { Trivial, Conj } kind = Kind::Trivial;
    FqMatrix c;

    static GroupAut trivial() { return GroupAut{}; }
    static GroupAut conj(const FiniteField& f, FqMatrix m);

    FqMatrix apply(const FiniteField& f, const FqMatrix& g) const;
    FqMatrix apply_pow(const FiniteField& f, const FqMatrix& g, long k) const;
};

struct SemidirectData {
    GroupAut theta_fr, theta_s;
    long q = 2;
    bool w_relation_ok = false;

    // Verifies theta_fr theta_s theta_fr^{-1} = theta_s^q on the given
    // elements and sets w_relation_ok; throws BadActionError on failure.
    void verify_relation(const FiniteField& f, const std::vector<FqMatrix>& sample);
};

struct TameParameterPoint {
    FqMatrix f0, sigma0;
    FqMatrix sigma_ss, sigma_u;  // Jordan parts of the L-group element

    bool operator==(const TameParameterPoint& o) const = default;
};

inline constexpr std::uint64_t kDefaultMaxPairs = 10'000'000;

// All pairs satisfying F0 * th_Fr(sigma0) * th_s^q(F0)^{-1} = N_q(sigma0), in
// (F0, sigma0) lexicographic order. `group` must be the canonical enumeration.
std::vector<TameParameterPoint> enumerate_z1_serial(const GroupSpecFin& spec,
                                                    const SemidirectData& sd,
                                                    const std::vector<FqMatrix>& group,
                                                    std::uint64_t max_pairs = kDefaultMaxPairs);
// OpenMP variant; output is identical to the serial reference.
std::vector<TameParameterPoint> enumerate_z1(const GroupSpecFin& spec,
                                             const SemidirectData& sd,
                                             const std::vector<FqMatrix>& group,
                                             std::uint64_t max_pairs = kDefaultMaxPairs);

std::vector<TameParameterPoint> fiber_over_sigma(const std::vector<TameParameterPoint>& points,
                                                 const FqMatrix& xi);

// {g : g xi theta_s(g)^{-1} = xi}, the centralizer of the L-group element
// (xi, s) inside the finite group.
std::vector<FqMatrix> twisted_centralizer(const GroupSpecFin& spec, const SemidirectData& sd,
                                          const FqMatrix& xi,
                                          const std::vector<FqMatrix>& group);

struct BoundsReport {
    bool jordan_ok = false;     // order(sigma_ss) prime to ell and divides e(q^{fN}-1)
    bool unipotent_ok = false;  // sigma^M unipotent, M = q^{n!}-1 (GL) or e(q^{fN}-1)
    bool estimate_ok = false;   // semisimple sigma: order divides e*chi(q)^2
    bool sigma_semisimple = false;
};

BoundsReport check_point_bounds(const GroupSpecFin& spec, const SemidirectData& sd,
                                const TameParameterPoint& pt,
                                const dualgroup::ArithContext& ctx, const IntPoly& chi);

struct TangentReport {
    long dim_tangent = 0;
    long dim_h0_twist = 0;
    bool unobstructed = false;
};

TangentReport tangent_report(const GroupSpecFin& spec, const SemidirectData& sd,
                             const TameParameterPoint& pt);

struct PointAnalysis {
    TameParameterPoint pt;
    TangentReport tangent;
    BoundsReport bounds;
};

std::vector<PointAnalysis> analyze_points(const GroupSpecFin& spec, const SemidirectData& sd,
                                          const std::vector<TameParameterPoint>& points,
                                          const dualgroup::ArithContext& ctx,
                                          const IntPoly& chi);

// The Weyl order and untwisted chi of the dual group of the finite kind, used
// by the bound checks.
unsigned long long dual_weyl_order(const GroupSpecFin& spec);
IntPoly dual_chi(const GroupSpecFin& spec);

struct Sl2Parameter {
    TameParameterPoint pt;
    FiniteField field;   // possibly a quadratic extension of the requested one
    int sqrt_q;          // the square root of q that was used
};

// Point with sigma0 = lambda(U), F0 = lambda(S) * f_part, from the principal
// embedding on contiguous descending weight chains. Extends the field when q
// has no square root. Throws BadInputError when f_part does not centralize
// lambda (the defining relation is re-verified).
Sl2Parameter sl2_parameter(const std::vector<long>& weights, const FqMatrix& f_part,
                           const FiniteField& field, long q);

struct InertialClass {
    FqMatrix rep;        // canonical representative of the sigma_ss class
    int beta_label = 0;  // single label for GL (connected centralizers)
    std::uint64_t count = 0;
};

// Points grouped by the conjugacy class of the semisimple inertial part;
// GL kinds only.
std::vector<InertialClass> inertial_classes(const GroupSpecFin& spec,
                                            const std::vector<TameParameterPoint>& points,
                                            const std::vector<FqMatrix>& group);

// Enumerates t in (F^x)^rank with beta(t) = t^q, asserting each order divides
// chi(q); returns the maximal order found.
Int twisted_torus_orders(int rank, const exactalg::IntMatrix& beta_on_chars,
                         const FiniteField& field, long q, const IntPoly& chi);

struct AbelianStructure {
    std::vector<Int> invariant_factors;  // d_1 | d_2 | ..., all > 1; empty = trivial
    bool operator==(const AbelianStructure& o) const = default;
};

struct CyclicCohomology {
    AbelianStructure h1_inertia;  // N_M^{-1}(A[p'])/A(sigma)
    AbelianStructure h1_total;    // Fr-coinvariants of the above
};

// Lemma-style computation for A = prod Z/d_i with commuting endomorphism
// actions given as integer matrices (multipliers in the cyclic case).
CyclicCohomology cyclic_cohomology(const std::vector<long>& a_factors,
                                   const exactalg::IntMatrix& sigma_action,
                                   const exactalg::IntMatrix& fr_action, long q, long m_order,
                                   long p);

struct TwistedClass {
    int rep_index;  // index into the group table's element list
    std::uint64_t size;
};

// Z^1(Z/m, H) for the index-permutation action `sigma` on the listed group,
// partitioned into twisted-conjugacy classes h ~ g h sigma(g)^{-1}.
std::vector<TwistedClass> h1_finite(long m, const std::vector<int>& sigma,
                                    const fingrp::GroupTable& table,
                                    std::uint64_t guard = 1'000'000);

}  // namespace langparams::moduli
