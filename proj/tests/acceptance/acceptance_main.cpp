// acceptance_main.cpp -- one pass/fail line per acceptance criterion.
//
// Usage: acceptance [--rebuild-fixtures]
// The fixtures directory and CLI path come in through compile definitions.
#include "langparams/dualgroup.hpp"
#include "langparams/fingroup.hpp"
#include "langparams/kostant.hpp"
#include "langparams/moduli.hpp"
#include "langparams/primes.hpp"
#include "langparams/rootdata.hpp"
#include "langparams/serialize.hpp"
#include "langparams/typespec.hpp"

#include "support/oracles.hpp"

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

namespace lp = langparams;
using lp::Int;
using lp::exactalg::IntPoly;
using lp::fingrp::FiniteField;
using lp::fingrp::FqMatrix;
using lp::fingrp::GroupKind;
using lp::fingrp::GroupSpecFin;
using nlohmann::json;

namespace {

struct Failure {
    std::string detail;
};

#define REQUIRE_EQ(a, b, what)                                                       \
    do {                                                                             \
        if (!((a) == (b))) {                                                         \
            std::ostringstream os_;                                                  \
            os_ << what << " (line " << __LINE__ << ")";                             \
            throw Failure{os_.str()};                                                \
        }                                                                            \
    } while (0)

#define REQUIRE_TRUE(c, what) REQUIRE_EQ(static_cast<bool>(c), true, what)

IntPoly t_minus(int d, int sign = 1) {
    std::vector<Int> c(d + 1, Int(0));
    c[0] = -sign;
    c[d] = 1;
    return IntPoly(std::move(c));
}

lp::dualgroup::ArithContext ctx_for(long q, long e = 1, long f = 1) {
    lp::dualgroup::ArithContext c;
    c.q = q;
    Int qq = q;
    c.p = qq;
    for (Int d = 2; d * d <= qq; ++d)
        if (qq % d == 0) {
            c.p = d;
            break;
        }
    c.e = e;
    c.f = f;
    return c;
}

// ---------------------------------------------------------------------------
// 1. Closed-form chi tables.
// ---------------------------------------------------------------------------
void criterion1() {
    using lp::rootdata::chi_twisted;
    // GL_n untwisted, n <= 5
    for (int n = 1; n <= 5; ++n) {
        auto tt = lp::typespec::build_type("GL" + std::to_string(n));
        IntPoly expect = IntPoly::constant(1);
        for (int d = 1; d <= n; ++d) expect = expect * t_minus(d);
        REQUIRE_EQ(chi_twisted(tt.datum, tt.beta), expect, "GL" << n << " untwisted chi");
    }
    // twisted GL_N, N <= 4
    for (int n = 1; n <= 4; ++n) {
        auto tt = lp::typespec::build_type("GL" + std::to_string(n) + "^2");
        IntPoly expect = IntPoly::constant(1);
        for (int d = 1; d <= n; ++d) expect = expect * t_minus(d, d % 2 == 0 ? 1 : -1);
        REQUIRE_EQ(chi_twisted(tt.datum, tt.beta), expect, "GL" << n << " twisted chi");
    }
    // Sp_{ 2n } and SO_{2n+1}: prod (T^{2d} - 1)
    for (int n = 2; n <= 4; ++n) {
        IntPoly expect = IntPoly::constant(1);
        for (int d = 1; d <= n; ++d) expect = expect * t_minus(2 * d);
        auto sp = lp::typespec::build_type("Sp" + std::to_string(2 * n));
        REQUIRE_EQ(chi_twisted(sp.datum, sp.beta), expect, "Sp" << 2 * n << " chi");
        auto so = lp::typespec::build_type("SO" + std::to_string(2 * n + 1));
        REQUIRE_EQ(chi_twisted(so.datum, so.beta), expect, "SO" << 2 * n + 1 << " chi");
    }
    // SO_{2n}: (T^n + (-1)^f) prod_{d<n}(T^{2d} - 1), n <= 4
    for (int n = 2; n <= 4; ++n) {
        IntPoly tail = IntPoly::constant(1);
        for (int d = 1; d < n; ++d) tail = tail * t_minus(2 * d);
        auto plain = lp::typespec::build_type("SO" + std::to_string(2 * n));
        REQUIRE_EQ(chi_twisted(plain.datum, plain.beta), t_minus(n) * tail,
                   "SO" << 2 * n << " untwisted chi");
        auto tw = lp::typespec::build_type("SO" + std::to_string(2 * n) + "^2");
        REQUIRE_EQ(chi_twisted(tw.datum, tw.beta), t_minus(n, -1) * tail,
                   "SO" << 2 * n << " twisted chi");
    }
    // triality
    auto tri = lp::typespec::build_type("SO8^3");
    IntPoly corr({1, 0, 0, 0, 1, 0, 0, 0, 1});
    IntPoly chi3 = chi_twisted(tri.datum, tri.beta);
    REQUIRE_EQ(chi3, t_minus(2) * t_minus(6) * corr, "triality chi");
    REQUIRE_EQ(lp::rootdata::twisted_coxeter(chi3), 12, "triality h");
    REQUIRE_EQ(lp::rootdata::chi_prime(tri.datum, tri.beta), t_minus(12), "chi'");
}

// ---------------------------------------------------------------------------
// 2. Springer-lcm oracle equals the degree tables.
// ---------------------------------------------------------------------------
void criterion2() {
    std::vector<std::string> labels;
    for (int n = 1; n <= 4; ++n) labels.push_back("A" + std::to_string(n));
    for (int n = 2; n <= 4; ++n) labels.push_back("B" + std::to_string(n));
    for (int n = 2; n <= 4; ++n) labels.push_back("C" + std::to_string(n));
    for (int n = 2; n <= 4; ++n) labels.push_back("D" + std::to_string(n));
    for (int n = 1; n <= 4; ++n) labels.push_back("GL" + std::to_string(n));
    for (int n = 2; n <= 4; ++n) labels.push_back("SL" + std::to_string(n));
    labels.insert(labels.end(), {"Sp4", "Sp6", "Sp8", "SO5", "SO7", "SO8", "G2", "F4", "E6"});
    for (const auto& label : labels) {
        auto d = lp::rootdata::build_root_datum(label);
        auto beta = lp::rootdata::trivial_automorphism(d);
        IntPoly oracle = chi_twisted(d, beta, lp::rootdata::ChiMethod::Oracle);
        IntPoly table = chi_twisted(d, beta, lp::rootdata::ChiMethod::Table);
        REQUIRE_EQ(oracle, table, label << " oracle vs table");
    }
}

// ---------------------------------------------------------------------------
// 3. Point counts against exhaustive enumeration.
// ---------------------------------------------------------------------------
void criterion3() {
    auto check = [&](const char* type, GroupKind kind, int n, long ell, int k) {
        FiniteField field(ell, k);
        GroupSpecFin gspec(kind, n, field);
        std::uint64_t exhaustive = oracles::filter_count(gspec);
        auto spec = lp::typespec::build_lgroup_spec(type, ctx_for(field.size()));
        Int formula = lp::dualgroup::chevalley_steinberg(spec, Int(field.size()));
        REQUIRE_EQ(formula, Int(exhaustive), type << " over F_" << field.size());
    };
    check("GL2", GroupKind::GL, 2, 2, 1);
    check("GL2", GroupKind::GL, 2, 3, 1);
    check("GL2", GroupKind::GL, 2, 2, 2);
    check("GL2", GroupKind::GL, 2, 5, 1);
    check("SL2", GroupKind::SL, 2, 2, 1);
    check("SL2", GroupKind::SL, 2, 3, 1);
    check("SL2", GroupKind::SL, 2, 5, 1);
    check("GL3", GroupKind::GL, 3, 2, 1);
    check("Sp4", GroupKind::Sp, 4, 2, 1);
    REQUIRE_EQ(lp::dualgroup::chevalley_steinberg(
                   lp::typespec::build_lgroup_spec("Sp4", ctx_for(2)), 2),
               Int(720), "Sp4(F_2) = 720");
    REQUIRE_EQ(lp::dualgroup::chevalley_steinberg(
                   lp::typespec::build_lgroup_spec("GL3^2", ctx_for(2)), 2),
               Int(648), "U3(F_2) = 648");
    REQUIRE_EQ(oracles::unitary_count(FiniteField(2, 2), 3), 648ull, "U3 exhaustive");
}

// ---------------------------------------------------------------------------
// 4. Moduli property suite.
// ---------------------------------------------------------------------------
void criterion4(json* fixture_out, const json* fixture_in) {
    for (int n : {1, 2}) {
        for (long ell : {3L, 5L, 7L}) {
            for (long q : {2L, 3L, 4L}) {
                auto ctx = ctx_for(q);
                if (ctx.p == ell) continue;
                FiniteField field(ell, 1);
                GroupSpecFin spec(GroupKind::GL, n, field);
                auto group = lp::fingrp::enumerate_group(spec);
                lp::moduli::SemidirectData sd;
                sd.q = q;
                sd.verify_relation(field, group);
                auto points = lp::moduli::enumerate_z1(spec, sd, group);

                std::string key = "GL" + std::to_string(n) + ",ell" + std::to_string(ell) +
                                  ",k1,q" + std::to_string(q) + ",trivial";
                if (fixture_out) (*fixture_out)["z1_counts"][key] = points.size();
                if (fixture_in) {
                    std::uint64_t expect = fixture_in->at("z1_counts").at(key).get<std::uint64_t>();
                    REQUIRE_EQ(points.size(), expect, "golden count " << key);
                }

                // (a) defining relation via the independent semidirect model
                oracles::SemidirectModel model(field, sd.theta_s, sd.theta_fr, sd.q);
                for (const auto& pt : points)
                    REQUIRE_TRUE(model.relation_holds(pt.f0, pt.sigma0),
                                 "relation " << key);

                // (b)+(c) Jordan bound and unipotence, (estimate as bonus)
                auto chi = lp::moduli::dual_chi(spec);
                for (const auto& pt : points) {
                    auto b = lp::moduli::check_point_bounds(spec, sd, pt, ctx, chi);
                    REQUIRE_TRUE(b.jordan_ok, "jordan bound " << key);
                    REQUIRE_TRUE(b.unipotent_ok, "unipotence " << key);
                    REQUIRE_TRUE(b.estimate_ok, "ss estimate " << key);
                }

                // (d) fiber torsor property
                std::set<std::vector<int>> sigmas;
                for (const auto& pt : points) sigmas.insert(pt.sigma0.e);
                for (const auto& se : sigmas) {
                    FqMatrix xi(n, se);
                    auto fiber = lp::moduli::fiber_over_sigma(points, xi);
                    auto cent = lp::moduli::twisted_centralizer(spec, sd, xi, group);
                    REQUIRE_EQ(fiber.size(), cent.size(), "torsor size " << key);
                    std::set<std::vector<int>> cset;
                    for (const auto& c : cent) cset.insert(c.e);
                    FqMatrix base_inv = lp::fingrp::mat_inv(field, fiber.front().f0);
                    for (const auto& x : fiber) {
                        FqMatrix ratio = lp::fingrp::mat_mul(field, x.f0, base_inv);
                        REQUIRE_TRUE(cset.count(ratio.e) == 1, "torsor ratio " << key);
                    }
                }

                // (e) tangent equality with zero tolerance
                long dim_g = static_cast<long>(n) * n;
                for (const auto& pt : points) {
                    auto rep = lp::moduli::tangent_report(spec, sd, pt);
                    REQUIRE_EQ(rep.dim_tangent, dim_g + rep.dim_h0_twist,
                               "tangent equality " << key);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 5. Torus unobstructedness equivalence.
// ---------------------------------------------------------------------------
void criterion5() {
    using lp::exactalg::IntMatrix;
    struct Action {
        const char* name;
        IntMatrix m;
    };
    std::vector<Action> actions;
    actions.push_back({"trivial1", IntMatrix::identity(1)});
    actions.push_back({"inv1", IntMatrix(1, 1, {Int(-1)})});
    actions.push_back({"trivial2", IntMatrix::identity(2)});
    actions.push_back({"swap2", IntMatrix(2, 2, {Int(0), Int(1), Int(1), Int(0)})});
    IntMatrix inv2(2, 2);
    inv2.at(0, 0) = -1;
    inv2.at(1, 1) = -1;
    actions.push_back({"inv2", inv2});

    for (const auto& act : actions) {
        int r = act.m.rows();
        IntPoly chi = act.m.char_poly().primitive_part();
        for (long q : {2L, 3L, 5L, 9L}) {
            long p = (q == 9) ? 3 : (q == 4 ? 2 : q);
            for (long ell = 2; ell <= 50; ++ell) {
                if (!lp::exactalg::is_prime(Int(ell)) || ell == p) continue;
                // eigenvalue criterion: det(q * Ad_Fr - id | Lie) over F_ell,
                // Ad_Fr = inverse transpose of the character action.
                FiniteField f(ell, 1);
                // invert act.m mod ell
                unsigned long order = act.m.finite_order();
                IntMatrix minv = act.m.pow(order - 1);
                std::vector<std::vector<int>> a(r, std::vector<int>(r, 0));
                int qf = f.from_int(q);
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j) {
                        int v = f.from_int(minv.at(j, i).convert_to<long long>());
                        a[i][j] = f.mul(qf, v);
                        if (i == j) a[i][j] = f.sub(a[i][j], f.one());
                    }
                // determinant over F_ell
                int det = f.one();
                for (int col = 0; col < r && det != 0; ++col) {
                    int pivot = -1;
                    for (int row = col; row < r; ++row)
                        if (a[row][col] != 0) {
                            pivot = row;
                            break;
                        }
                    if (pivot < 0) {
                        det = 0;
                        break;
                    }
                    if (pivot != col) {
                        std::swap(a[pivot], a[col]);
                        det = f.neg(det);
                    }
                    det = f.mul(det, a[col][col]);
                    int pi = f.inv(a[col][col]);
                    for (int row = col + 1; row < r; ++row) {
                        int factor = f.mul(a[row][col], pi);
                        if (factor == 0) continue;
                        for (int jj = col; jj < r; ++jj)
                            a[row][jj] = f.sub(a[row][jj], f.mul(factor, a[col][jj]));
                    }
                }
                bool eig_unobstructed = det != 0;
                bool chi_nonzero = lp::exactalg::eval_mod(chi, q, ell) != 0;
                REQUIRE_EQ(eig_unobstructed, chi_nonzero,
                           act.name << " ell=" << ell << " q=" << q);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 6. Kostant determinant identity.
// ---------------------------------------------------------------------------
void criterion6() {
    using lp::exactalg::Rat;
    for (const char* label : {"sl2", "sl3", "sl4", "sp4"}) {
        auto fr = lp::kostant::principal_triple(label);
        std::vector<std::optional<lp::kostant::PinnedOuter>> betas;
        betas.push_back(std::nullopt);
        auto outer = lp::kostant::pinned_outer(fr);
        if (outer) betas.push_back(outer);
        for (const auto& beta : betas) {
            int sign = 0;
            for (Rat t : {Rat(2), Rat(3), Rat(5), Rat(-2)}) {
                auto rep =
                    lp::kostant::kostant_determinant(fr, beta ? &*beta : nullptr, t);
                // |det| = |chi(t^2)| is asserted inside; re-check here.
                Rat abs_det = rep.det < 0 ? -rep.det : rep.det;
                Int abs_chi = rep.chi_at_t2 < 0 ? -rep.chi_at_t2 : rep.chi_at_t2;
                REQUIRE_EQ(abs_det, Rat(abs_chi),
                           label << " |det| = |chi(t^2)| at t=" << t);
                if (sign == 0) sign = rep.sign;
                REQUIRE_EQ(rep.sign, sign, label << " sign constancy");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 7. Banal comparison at the criterion level.
// ---------------------------------------------------------------------------
void criterion7() {
    for (const char* type : {"GL1", "GL2", "GL3", "GL4", "Sp4", "SO5"}) {
        for (long q : {2L, 3L, 5L}) {
            auto spec = lp::typespec::build_lgroup_spec(type, ctx_for(q));
            auto rep = lp::dualgroup::banal_report(spec);
            int h = lp::dualgroup::untwisted_coxeter_number(spec);
            REQUIRE_TRUE(rep.excluded_classical.has_value(), type << " classical set");
            std::set<Int> lhs, rhs;
            for (const auto& l : *rep.excluded_classical)
                if (l > h) lhs.insert(l);
            for (const auto& l : lp::exactalg::prime_divisors(rep.chi.eval(q)))
                if (l > h && l != ctx_for(q).p) rhs.insert(l);
            REQUIRE_EQ(lhs, rhs, type << " q=" << q << " set equality above h=" << h);
        }
    }
}

// ---------------------------------------------------------------------------
// 8. Cyclic cohomology formula vs brute force.
// ---------------------------------------------------------------------------
void criterion8() {
    using lp::exactalg::IntMatrix;
    for (long n = 2; n <= 30; ++n) {
        for (long q : {2L, 3L}) {
            long p = 7;
            while (n % p == 0 || q == p) p = p == 7 ? 11 : 13;
            // sigma multipliers of multiplicative order <= 6 with s^q = s mod n
            for (long s = 1; s < n; ++s) {
                if (std::gcd(s, n) != 1) continue;
                long m_order = 1, acc = s % n;
                while (acc != 1 % n && m_order <= 6) {
                    acc = (acc * s) % n;
                    ++m_order;
                }
                if (m_order > 6) continue;
                long sq = 1;
                for (long i = 0; i < q; ++i) sq = (sq * s) % n;
                if (sq != s % n) continue;
                for (long fmult : {1L, 3L, n - 1}) {
                    if (std::gcd(fmult, n) != 1) continue;
                    // fr must commute with sigma and satisfy the relation;
                    // multipliers commute, so only s^q = s was needed.
                    auto formula = lp::moduli::cyclic_cohomology(
                        {n}, IntMatrix(1, 1, {Int(s)}), IntMatrix(1, 1, {Int(fmult)}), q,
                        m_order, p);
                    // brute force at quotient levels M*m, m <= 6, plus the
                    // saturated level; levels must stay prime to p.
                    long extra = 1;
                    while (std::gcd(m_order * n * extra, p) != 1) ++extra;
                    long k_sat = m_order * n * extra;
                    auto brute = oracles::brute_cyclic_h1(n, s, fmult, q, k_sat);
                    std::vector<Int> bh1(brute.h1.begin(), brute.h1.end());
                    std::vector<Int> bco(brute.h1_coinv.begin(), brute.h1_coinv.end());
                    REQUIRE_EQ(formula.h1_inertia.invariant_factors, bh1,
                               "h1(I) n=" << n << " s=" << s << " f=" << fmult
                                          << " q=" << q);
                    REQUIRE_EQ(formula.h1_total.invariant_factors, bco,
                               "h1 coinv n=" << n << " s=" << s << " f=" << fmult
                                             << " q=" << q);
                    // levels below saturation climb toward the limit
                    for (long m = 1; m <= 6; ++m) {
                        if (std::gcd(m_order * m, p) != 1) continue;
                        if ((m_order * m * n) % k_sat == 0) {
                            auto level = oracles::brute_cyclic_h1(n, s, fmult, q,
                                                                  m_order * m * n);
                            std::vector<Int> lh(level.h1.begin(), level.h1.end());
                            REQUIRE_EQ(formula.h1_inertia.invariant_factors, lh,
                                       "saturated level n=" << n << " m=" << m);
                        }
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 9. Torus cocycle groups vs finite-field point counts.
// ---------------------------------------------------------------------------
void criterion9() {
    using lp::exactalg::IntMatrix;
    IntMatrix id1 = IntMatrix::identity(1);
    IntMatrix id2 = IntMatrix::identity(2);
    IntMatrix inv1(1, 1, {Int(-1)});
    IntMatrix swap(2, 2, {Int(0), Int(1), Int(1), Int(0)});
    IntMatrix inv2(2, 2);
    inv2.at(0, 0) = -1;
    inv2.at(1, 1) = -1;

    struct Case {
        IntMatrix fr, s;
    };
    std::vector<Case> cases = {{id1, id1}, {inv1, id1}, {id2, id2}, {swap, id2}, {inv2, id2}};
    for (const auto& c : cases) {
        for (long q : {2L, 3L, 5L, 9L}) {
            auto st = lp::dualgroup::torus_cocycle_group(c.fr, c.s, q);
            for (long ell = 2; ell <= 50; ++ell) {
                if (!lp::exactalg::is_prime(Int(ell))) continue;
                Int predicted = st.point_count(Int(ell - 1));
                std::uint64_t actual = oracles::torus_cocycle_point_count(c.fr, c.s, q, ell);
                REQUIRE_EQ(predicted, Int(actual),
                           "points rank" << c.fr.rows() << " q=" << q << " ell=" << ell);
            }
        }
    }
    // headline identity: rank-1 trivial count is (ell-1) gcd(q-1, ell-1)
    for (long q : {2L, 3L, 5L, 9L}) {
        auto st = lp::dualgroup::torus_cocycle_group(id1, id1, q);
        for (long ell : {3L, 5L, 7L, 11L, 49L + 0L}) {
            if (!lp::exactalg::is_prime(Int(ell))) continue;
            REQUIRE_EQ(st.point_count(Int(ell - 1)),
                       Int(ell - 1) * boost::multiprecision::gcd(Int(q - 1), Int(ell - 1)),
                       "rank-1 closed form");
        }
    }
}

// ---------------------------------------------------------------------------
// 10. Golden regression: byte-identical fixtures across runs and thread counts.
// ---------------------------------------------------------------------------
std::string compute_golden_blob() {
    json golden;
    // Z1 counts for the criterion-4 grid.
    for (int n : {1, 2})
        for (long ell : {3L, 5L, 7L})
            for (long q : {2L, 3L, 4L}) {
                auto ctx = ctx_for(q);
                if (ctx.p == ell) continue;
                FiniteField field(ell, 1);
                GroupSpecFin spec(GroupKind::GL, n, field);
                auto group = lp::fingrp::enumerate_group(spec);
                lp::moduli::SemidirectData sd;
                sd.q = q;
                sd.verify_relation(field, group);
                auto points = lp::moduli::enumerate_z1(spec, sd, group);
                std::string key = "GL" + std::to_string(n) + ",ell" + std::to_string(ell) +
                                  ",k1,q" + std::to_string(q) + ",trivial";
                golden["z1_counts"][key] = points.size();
            }
    // Inertial class lists.
    auto class_sizes = [&](int n, long ell, long q) {
        FiniteField field(ell, 1);
        GroupSpecFin spec(GroupKind::GL, n, field);
        auto group = lp::fingrp::enumerate_group(spec);
        lp::moduli::SemidirectData sd;
        sd.q = q;
        sd.verify_relation(field, group);
        auto points = lp::moduli::enumerate_z1(spec, sd, group);
        auto classes = lp::moduli::inertial_classes(spec, points, group);
        json arr = json::array();
        for (const auto& c : classes) {
            json jc;
            jc["rep"] = c.rep.e;
            jc["count"] = c.count;
            arr.push_back(jc);
        }
        return arr;
    };
    golden["inertial"]["GL1,ell5,k1,q3"] = class_sizes(1, 5, 3);
    golden["inertial"]["GL2,ell3,k1,q2"] = class_sizes(2, 3, 2);
    // Twisted classes of involutions in GL2(F3).
    {
        FiniteField f3(3, 1);
        GroupSpecFin spec(GroupKind::GL, 2, f3);
        auto group = lp::fingrp::enumerate_group(spec);
        lp::fingrp::GroupTable table(f3, group);
        std::vector<int> ident(group.size());
        std::iota(ident.begin(), ident.end(), 0);
        auto classes = lp::moduli::h1_finite(2, ident, table);
        json arr = json::array();
        for (const auto& c : classes) arr.push_back(c.size);
        golden["h1_finite"]["GL2,ell3,k1,m2"] = arr;
    }
    return golden.dump(2) + "\n";
}

void criterion10(const std::string& fixtures_path) {
    std::ifstream in(fixtures_path);
    REQUIRE_TRUE(in.good(), "fixtures file present: " << fixtures_path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string stored = buf.str();

#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    std::string serial_run = compute_golden_blob();
#ifdef _OPENMP
    omp_set_num_threads(omp_get_num_procs());
#endif
    std::string parallel_run = compute_golden_blob();
    REQUIRE_EQ(serial_run == stored, true, "fixtures reproduce byte-identically (serial)");
    REQUIRE_EQ(parallel_run == stored, true, "fixtures reproduce byte-identically (parallel)");

#ifdef LP_CLI_PATH
    // CLI determinism: identical invocations are byte-identical.
    auto run_cli = [](const std::string& args) {
        std::string cmd = std::string(LP_CLI_PATH) + " " + args + " 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) throw Failure{"cannot run the CLI"};
        std::string out;
        char chunk[4096];
        size_t got;
        while ((got = fread(chunk, 1, sizeof(chunk), pipe)) > 0) out.append(chunk, got);
        pclose(pipe);
        return out;
    };
    std::string a = run_cli("banal --type GL3 --q 2 --e 1");
    std::string b = run_cli("banal --type GL3 --q 2 --e 1");
    REQUIRE_TRUE(!a.empty(), "CLI produced output");
    REQUIRE_EQ(a == b, true, "CLI output byte-identical across runs");
    std::string c = run_cli("enumerate --group GL2 --ell 3 --k 1 --q 2");
    std::string d = run_cli("enumerate --group GL2 --ell 3 --k 1 --q 2");
    REQUIRE_EQ(c == d, true, "CLI enumerate byte-identical across runs");

    // exit codes: 0 on success, 1 on validation errors, 2 on size guards
    auto cli_status = [](const std::string& args) {
        std::string cmd = std::string(LP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
        int rc = std::system(cmd.c_str());
        return WEXITSTATUS(rc);
    };
    REQUIRE_EQ(cli_status("chi --type SO8^3"), 0, "exit 0 on success");
    REQUIRE_EQ(cli_status("chi --type BOGUS7"), 1, "exit 1 on validation error");
    REQUIRE_EQ(cli_status("enumerate --group GL2 --ell 3 --k 1 --q 2 --max-pairs 10"), 2,
               "exit 2 on size-guard refusal");
#endif
}

struct Criterion {
    std::string name;
    double budget_seconds;
    std::function<void()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::string fixtures = std::string(LP_FIXTURES_DIR) + "/golden_counts.json";
    if (argc > 1 && std::string(argv[1]) == "--rebuild-fixtures") {
        std::ofstream out(fixtures, std::ios::binary);
        out << compute_golden_blob();
        std::cout << "fixtures written to " << fixtures << "\n";
        return 0;
    }

    json fixture_in;
    {
        std::ifstream in(fixtures);
        if (in.good()) in >> fixture_in;
    }

    std::vector<Criterion> criteria = {
        {"1 closed-form chi tables", 10.0, [] { criterion1(); }},
        {"2 oracle/table equivalence", 60.0, [] { criterion2(); }},
        {"3 point counts", 120.0, [] { criterion3(); }},
        {"4 moduli property suite", 300.0,
         [&] { criterion4(nullptr, fixture_in.is_null() ? nullptr : &fixture_in); }},
        {"5 torus unobstructedness equivalence", 60.0, [] { criterion5(); }},
        {"6 Kostant identity", 10.0, [] { criterion6(); }},
        {"7 banal comparison", 60.0, [] { criterion7(); }},
        {"8 cyclic cohomology", 120.0, [] { criterion8(); }},
        {"9 torus cocycle point counts", 120.0, [] { criterion9(); }},
        {"10 golden regression", 300.0, [&] { criterion10(fixtures); }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string detail;
        try {
            c.run();
        } catch (const Failure& f) {
            verdict = "FAIL";
            detail = f.detail;
            ++failures;
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
            ++failures;
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (verdict == "PASS" && secs > c.budget_seconds) {
            verdict = "FAIL";
            detail = "runtime " + std::to_string(secs) + "s over budget";
            ++failures;
        }
        std::printf("%s criterion %s (%.2fs)%s%s\n", verdict.c_str(), c.name.c_str(), secs,
                    detail.empty() ? "" : ": ", detail.c_str());
    }
    return failures == 0 ? 0 : 1;
}
