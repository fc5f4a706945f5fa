#include "langparams/dualgroup.hpp"

#include "langparams/errors.hpp"
#include "langparams/primes.hpp"

#include <algorithm>

namespace langparams::dualgroup {

namespace {

IntPoly substitute_power(const IntPoly& p, long f) {
    if (f == 1) return p;
    if (p.is_zero()) return p;
    std::vector<Int> c(static_cast<size_t>(p.degree()) * f + 1, Int(0));
    for (int i = 0; i <= p.degree(); ++i) c[static_cast<size_t>(i) * f] = p.coeff(i);
    return IntPoly(std::move(c));
}

std::set<Int> primes_excluding_p(const Int& value, const Int& p) {
    std::set<Int> s = exactalg::prime_divisors(value);
    s.erase(p);
    return s;
}

Int factorial(int n) {
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

void ArithContext::validate() const {
    if (p < 2 || !exactalg::is_prime(p)) throw ValidationError("p must be prime");
    Int m = q;
    if (m < 2) throw ValidationError("q must be a prime power >= 2");
    while (m % p == 0) m /= p;
    if (m != 1) throw ValidationError("q must be a power of p");
    if (e < 1 || f < 1) throw ValidationError("e and f must be positive");
    if (Int(e) % p == 0) throw ValidationError("e must be prime to p");
}

void LGroupSpec::validate() const {
    context.validate();
    if (abelian_rank < 0) throw ValidationError("negative abelian rank");
    if (abelian_rank > 0) {
        if (abelian_fr.rows() != abelian_rank || abelian_fr.cols() != abelian_rank)
            throw ValidationError("abelian Frobenius matrix has wrong shape");
        if (abelian_fr.finite_order() == 0)
            throw BadActionError("abelian Frobenius matrix is not of finite order");
    }
    for (const auto& fac : factors) {
        if (fac.f < 1) throw ValidationError("factor cycle length must be >= 1");
        if (fac.twist.lattice_matrix.rows() != fac.datum.rank)
            throw ValidationError("factor twist does not match the datum rank");
    }
}

IntPoly chi_global(const LGroupSpec& spec) {
    spec.validate();
    IntPoly acc = IntPoly::constant(1);
    if (spec.abelian_rank > 0) {
        IntPoly ab = spec.abelian_fr.char_poly();
        // The torus computation in terms of Fr^{-1} gives the same polynomial
        // for finite-order actions; keep that as a runtime check.
        IntMatrix inv = spec.abelian_fr.pow(spec.abelian_fr.finite_order() - 1);
        if (inv.char_poly() != ab)
            throw BadActionError("abelian char poly differs from its inverse's");
        acc = acc * ab.primitive_part();
    }
    for (const auto& fac : spec.factors) {
        IntPoly chi_f = rootdata::chi_twisted(fac.datum, fac.twist);
        acc = acc * substitute_power(chi_f, fac.f);
    }
    return acc;
}

IntPoly chi_global_corrected(const LGroupSpec& spec) {
    spec.validate();
    IntPoly acc = IntPoly::constant(1);
    if (spec.abelian_rank > 0) acc = acc * spec.abelian_fr.char_poly().primitive_part();
    for (const auto& fac : spec.factors) {
        IntPoly chi_f = rootdata::chi_prime(fac.datum, fac.twist);
        acc = acc * substitute_power(chi_f, fac.f);
    }
    return acc;
}

Int chevalley_steinberg(const LGroupSpec& spec, const Int& q) {
    IntPoly chi = chi_global(spec);
    unsigned long n_exp = 0;
    for (const auto& fac : spec.factors)
        n_exp += static_cast<unsigned long>(fac.f) * fac.datum.positive_root_count();
    Int count = int_pow(q, n_exp) * chi.eval(q);
    if (count <= 0)
        throw NonPositiveCountError("point count came out non-positive; inconsistent spec");
    return count;
}

int untwisted_coxeter_number(const LGroupSpec& spec) {
    int h = 1;
    for (const auto& fac : spec.factors) {
        for (const auto& fi : fac.datum.factors) {
            rootdata::BasedRootDatum sub = rootdata::build_root_datum(fi.label);
            std::vector<int> deg = rootdata::fundamental_degrees(sub);
            if (!deg.empty()) h = std::max(h, deg.back());
        }
    }
    return h;
}

bool has_exceptional_or_triality_factor(const LGroupSpec& spec) {
    for (const auto& fac : spec.factors) {
        for (const auto& fi : fac.datum.factors) {
            if (fi.family == rootdata::Family::G || fi.family == rootdata::Family::F ||
                fi.family == rootdata::Family::E)
                return true;
        }
        if (rootdata::is_triality(fac.datum, fac.twist)) return true;
        if (fac.twist.order % 3 == 0) return true;
    }
    return false;
}

BanalReport banal_report(const LGroupSpec& spec) {
    BanalReport rep;
    rep.chi = chi_global(spec);
    rep.h = rootdata::twisted_coxeter(rep.chi);
    rep.chi_star = rootdata::chi_star_from_chi(rep.chi);

    const Int& q = spec.context.q;
    const Int& p = spec.context.p;
    Int e = spec.context.e;

    rep.excluded_general = primes_excluding_p(e * rep.chi_star.eval(q), p);
    rep.g_nonbanal = primes_excluding_p(rep.chi.eval(q), p);

    if (!has_exceptional_or_triality_factor(spec)) {
        int h1 = untwisted_coxeter_number(spec);
        rep.excluded_classical =
            primes_excluding_p(e * rep.chi.eval(q) * factorial(h1), p);
    } else {
        IntPoly corrected = chi_global_corrected(spec);
        if (corrected != rep.chi) {
            rep.chi_prime = corrected;
            rep.excluded_corrected = primes_excluding_p(e * corrected.eval(q), p);
        }
    }
    return rep;
}

std::vector<BanalComparison> compare_banal(const LGroupSpec& spec, long bound) {
    if (has_exceptional_or_triality_factor(spec))
        throw NotApplicableError("banal comparison requires no exceptional or triality factor");
    BanalReport rep = banal_report(spec);
    int h1 = untwisted_coxeter_number(spec);
    std::vector<BanalComparison> out;
    for (long l = h1 + 1; l <= bound; ++l) {
        Int lv = l;
        if (!exactalg::is_prime(lv) || lv == spec.context.p) continue;
        BanalComparison c;
        c.prime = lv;
        c.lg_banal_excluded = rep.excluded_classical->count(lv) > 0;
        c.g_nonbanal = rep.g_nonbanal.count(lv) > 0;
        out.push_back(c);
    }
    return out;
}

Int CocycleGroupStructure::point_count(const Int& unit_group_order) const {
    Int n = int_pow(unit_group_order, static_cast<unsigned long>(free_rank));
    for (const auto& d : torsion) n *= boost::multiprecision::gcd(d, unit_group_order);
    return n;
}

CocycleGroupStructure torus_cocycle_group(const IntMatrix& a_fr, const IntMatrix& a_s,
                                          long q) {
    if (q < 2) throw ValidationError("q must be >= 2");
    int r = a_fr.rows();
    if (a_fr.cols() != r || a_s.rows() != r || a_s.cols() != r)
        throw ValidationError("actions must be square matrices of equal size");
    unsigned long of = a_fr.finite_order(), os = a_s.finite_order();
    if (of == 0 || os == 0) throw BadActionError("actions must have finite order");
    IntMatrix fr_inv = a_fr.pow(of - 1);
    if (a_fr * a_s * fr_inv != a_s.pow(static_cast<unsigned long>(q)))
        throw BadActionError("W-relation a_fr a_s a_fr^{-1} = a_s^q fails");

    // Transpose of the defining map on characters:
    //   chi |-> ((1 - a_s^q) chi, (a_fr - sum_{i<q} a_s^i) chi)  in X + X.
    IntMatrix top = IntMatrix::identity(r) - a_s.pow(static_cast<unsigned long>(q));
    IntMatrix norm(r, r);
    IntMatrix power = IntMatrix::identity(r);
    for (long i = 0; i < q; ++i) {
        norm = norm + power;
        power = power * a_s;
    }
    IntMatrix bottom = a_fr - norm;
    IntMatrix stacked(2 * r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            stacked.at(i, j) = top.at(i, j);
            stacked.at(r + i, j) = bottom.at(i, j);
        }
    exactalg::CokernelStructure ck = exactalg::cokernel_structure(stacked);
    return CocycleGroupStructure{ck.free_rank, ck.torsion};
}

GitDescriptor git_component_descriptor(int t_rank, const IntMatrix& beta_on_chars,
                                       const std::vector<IntMatrix>& weyl) {
    if (beta_on_chars.rows() != t_rank || beta_on_chars.cols() != t_rank)
        throw ValidationError("beta matrix size does not match the torus rank");
    if (beta_on_chars.finite_order() == 0)
        throw BadActionError("beta must have finite order");
    GitDescriptor d;
    IntMatrix diff = beta_on_chars - IntMatrix::identity(t_rank);
    d.invariant_rank = exactalg::integer_kernel(diff).rows();
    for (const auto& w : weyl)
        if (beta_on_chars * w == w * beta_on_chars) ++d.weyl_fixed;
    return d;
}

}  // namespace langparams::dualgroup
