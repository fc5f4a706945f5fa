// intpoly.hpp -- exact univariate integer polynomials, cyclotomic polynomials,
// modular evaluation, and the rational lcm used by the twisted characteristic
// polynomial machinery.
#pragma once

#include "langparams/bigint.hpp"

#include <map>
#include <string>
#include <vector>

namespace langparams::exactalg {

// Coefficients ascending by degree; the zero polynomial is the empty vector and
// a nonzero polynomial never stores a zero leading coefficient.
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs);
    static IntPoly zero() { return IntPoly(); }
    static IntPoly constant(Int c);
    static IntPoly monomial(int degree, Int c = 1);
    // T^n - 1.
    static IntPoly t_power_minus_one(int n);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Int>& coeffs() const { return c_; }
    Int coeff(int i) const;
    const Int& leading() const;

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator-() const;
    IntPoly operator*(const Int& k) const;

    // Quotient of an exact division; throws ValidationError when the division
    // is not exact over the integers.
    IntPoly divide_exact(const IntPoly& divisor) const;
    // True when `divisor` divides this polynomial over the rationals.
    bool divisible_by(const IntPoly& divisor) const;

    Int content() const;           // gcd of coefficients, 0 for the zero polynomial
    IntPoly primitive_part() const;  // content removed, leading coefficient > 0

    Int eval(const Int& a) const;
    std::string str(const std::string& var = "T") const;

  private:
    std::vector<Int> c_;
    void normalize();
};

// n-th cyclotomic polynomial (memoized); n >= 1.
IntPoly cyclotomic(int n);

// Greatest n we have to try when looking for cyclotomic divisors of a degree-d
// polynomial: all n with phi(n) <= d.
long euler_phi(long n);

struct CyclotomicFactorization {
    std::map<int, int> multiplicities;  // n -> multiplicity of Phi_n
    IntPoly remainder;                  // cofactor with no cyclotomic divisor in range
};

// Factor out every cyclotomic Phi_n with phi(n) <= deg p; p must be nonzero.
CyclotomicFactorization cyclotomic_factorization(const IntPoly& p);

// p(a) mod m by Horner evaluation with reduction at every step; m >= 2.
Int eval_mod(const IntPoly& p, const Int& a, const Int& m);

// Monic gcd over Q, returned as a primitive integer polynomial with positive
// leading coefficient. Both inputs must be nonzero.
IntPoly gcd_rational(const IntPoly& a, const IntPoly& b);

// Least common multiple over Q as a primitive integer polynomial with positive
// leading coefficient; throws EmptyInputError on an empty list.
IntPoly primitive_lcm(const std::vector<IntPoly>& polys);

}  // namespace langparams::exactalg
