#include "langparams/intpoly.hpp"

#include "langparams/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace langparams::exactalg {

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

void IntPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::constant(Int c) {
    IntPoly p;
    if (c != 0) p.c_.push_back(std::move(c));
    return p;
}

IntPoly IntPoly::monomial(int degree, Int c) {
    IntPoly p;
    if (c != 0) {
        p.c_.assign(degree + 1, Int(0));
        p.c_.back() = std::move(c);
    }
    return p;
}

IntPoly IntPoly::t_power_minus_one(int n) {
    IntPoly p;
    p.c_.assign(n + 1, Int(0));
    p.c_[0] = -1;
    p.c_[n] = 1;
    return p;
}

Int IntPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[i];
}

const Int& IntPoly::leading() const {
    static const Int zero = 0;
    return c_.empty() ? zero : c_.back();
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const {
    std::vector<Int> r(c_);
    for (auto& x : r) x = -x;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            r[i + j] += c_[i] * o.c_[j];
        }
    }
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const Int& k) const {
    std::vector<Int> r(c_);
    for (auto& x : r) x *= k;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::divide_exact(const IntPoly& divisor) const {
    if (divisor.is_zero()) throw ValidationError("division by the zero polynomial");
    if (is_zero()) return IntPoly();
    if (degree() < divisor.degree())
        throw ValidationError("inexact polynomial division (degree)");
    std::vector<Int> rem(c_);
    std::vector<Int> quo(degree() - divisor.degree() + 1, Int(0));
    const Int& lead = divisor.leading();
    for (int i = degree(); i >= divisor.degree(); --i) {
        Int top = rem[i];
        if (top == 0) continue;
        if (top % lead != 0) throw ValidationError("inexact polynomial division");
        Int q = top / lead;
        int shift = i - divisor.degree();
        quo[shift] = q;
        for (int j = 0; j <= divisor.degree(); ++j) rem[shift + j] -= q * divisor.c_[j];
    }
    for (const auto& x : rem)
        if (x != 0) throw ValidationError("inexact polynomial division (remainder)");
    return IntPoly(std::move(quo));
}

bool IntPoly::divisible_by(const IntPoly& divisor) const {
    if (divisor.is_zero()) return is_zero();
    if (is_zero()) return true;
    if (degree() < divisor.degree()) return false;
    // Rational long division; only the remainder matters.
    std::vector<Rat> rem(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) rem[i] = c_[i];
    Rat lead = divisor.leading();
    for (int i = degree(); i >= divisor.degree(); --i) {
        Rat q = rem[i] / lead;
        if (q == 0) continue;
        int shift = i - divisor.degree();
        for (int j = 0; j <= divisor.degree(); ++j) rem[shift + j] -= q * Rat(divisor.c_[j]);
    }
    for (int i = 0; i < divisor.degree(); ++i)
        if (rem[i] != 0) return false;
    return true;
}

Int IntPoly::content() const {
    Int g = 0;
    for (const auto& x : c_) g = boost::multiprecision::gcd(g, x);
    return boost::multiprecision::abs(g);
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    Int g = content();
    if (leading() < 0) g = -g;
    std::vector<Int> r(c_);
    for (auto& x : r) x /= g;
    return IntPoly(std::move(r));
}

Int IntPoly::eval(const Int& a) const {
    Int r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * a + *it;
    return r;
}

std::string IntPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Int& a = c_[i];
        if (a == 0) continue;
        Int mag = boost::multiprecision::abs(a);
        if (first) {
            if (a < 0) os << "-";
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        if (i == 0 || mag != 1) os << mag.str();
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

long euler_phi(long n) {
    long result = n, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

IntPoly cyclotomic(int n) {
    if (n < 1) throw ValidationError("cyclotomic index must be >= 1");
    static std::map<int, IntPoly> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    IntPoly result;
    if (n == 1) {
        result = IntPoly({-1, 1});
    } else {
        IntPoly num = IntPoly::t_power_minus_one(n);
        for (int d = 1; d < n; ++d)
            if (n % d == 0) num = num.divide_exact(cyclotomic(d));
        result = num;
    }
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(n, result);
    return result;
}

CyclotomicFactorization cyclotomic_factorization(const IntPoly& p) {
    if (p.is_zero()) throw ValidationError("cannot factor the zero polynomial");
    CyclotomicFactorization out;
    out.remainder = p;
    int d = p.degree();
    // phi(n) >= sqrt(n/2), so phi(n) <= d forces n <= 2 d^2 (and n=1,2 always qualify).
    long bound = 2L * d * d + 2;
    for (long n = 1; n <= bound; ++n) {
        if (euler_phi(n) > d) continue;
        IntPoly phi = cyclotomic(static_cast<int>(n));
        int mult = 0;
        while (out.remainder.degree() >= phi.degree() && out.remainder.divisible_by(phi)) {
            out.remainder = out.remainder.divide_exact(phi);
            ++mult;
        }
        if (mult > 0) out.multiplicities[static_cast<int>(n)] = mult;
    }
    return out;
}

Int eval_mod(const IntPoly& p, const Int& a, const Int& m) {
    if (m < 2) throw ValidationError("modulus must be >= 2");
    Int r = 0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = mod_nonneg(r * a + *it, m);
    return r;
}

namespace {

// Monic remainder sequence over Q.
std::vector<Rat> rational_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
    while (a.size() >= b.size() && !a.empty()) {
        Rat q = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= q * b[j];
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

IntPoly from_rational(const std::vector<Rat>& v) {
    // Clear denominators, then take the primitive part.
    Int den = 1;
    for (const auto& x : v) {
        Int d = boost::multiprecision::denominator(x);
        den = den / boost::multiprecision::gcd(den, d) * d;
    }
    std::vector<Int> c(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat scaled = v[i] * Rat(den);
        c[i] = boost::multiprecision::numerator(scaled);
    }
    return IntPoly(std::move(c)).primitive_part();
}

}  // namespace

IntPoly gcd_rational(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) throw ValidationError("gcd of zero polynomial");
    std::vector<Rat> x(a.coeffs().begin(), a.coeffs().end());
    std::vector<Rat> y(b.coeffs().begin(), b.coeffs().end());
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        auto r = rational_rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return from_rational(x);
}

IntPoly primitive_lcm(const std::vector<IntPoly>& polys) {
    if (polys.empty()) throw EmptyInputError();
    IntPoly acc;
    bool started = false;
    for (const auto& p : polys) {
        if (p.is_zero()) throw ValidationError("lcm of zero polynomial");
        IntPoly q = p.primitive_part();
        if (!started) {
            acc = q;
            started = true;
            continue;
        }
        // Both operands primitive, so Gauss's lemma makes the division exact over Z.
        IntPoly g = gcd_rational(acc, q);
        acc = (acc * q).divide_exact(g).primitive_part();
    }
    return acc;
}

}  // namespace langparams::exactalg
