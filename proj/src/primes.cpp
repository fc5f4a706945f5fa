#include "langparams/primes.hpp"

#include "langparams/errors.hpp"

#include <algorithm>

namespace langparams::exactalg {

namespace {

bool miller_rabin_witness(const Int& n, const Int& a) {
    if (a % n == 0) return false;
    Int d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    Int x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mod_nonneg(x * x, n);
        if (x == n - 1) return false;
    }
    return true;
}

Int pollard_brent(const Int& n) {
    // Brent's cycle variant with a deterministic seed schedule.
    for (Int c = 1; ; ++c) {
        Int x = 2, y = 2, d = 1;
        Int q = 1;
        int iter = 0;
        auto f = [&](const Int& v) { return mod_nonneg(v * v + c, n); };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            Int diff = x > y ? x - y : y - x;
            if (diff == 0) break;  // cycle without factor; try next c
            q = mod_nonneg(q * diff, n);
            if (++iter % 64 == 0) {
                d = boost::multiprecision::gcd(q, n);
            }
            if (iter > 1 << 22) break;
        }
        if (d == 1) {
            d = boost::multiprecision::gcd(q, n);
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_rec(const Int& n, std::map<Int, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    static const long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (long p : small) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // The first 13 primes witness deterministically below 3.3e24; the fixed list
    // is also used for the (rare) larger cofactors this library meets.
    for (long p : small)
        if (miller_rabin_witness(n, Int(p))) return false;
    return true;
}

std::map<Int, int> factorize(const Int& n) {
    if (n == 0) throw ZeroInputError();
    Int m = boost::multiprecision::abs(n);
    std::map<Int, int> out;
    for (long p = 2; p < 100000 && Int(p) * p <= m; p += (p == 2 ? 1 : 2)) {
        while (m % p == 0) {
            ++out[Int(p)];
            m /= p;
        }
    }
    if (m > 1) factor_rec(m, out);
    return out;
}

std::set<Int> prime_divisors(const Int& n) {
    if (n == 0) throw ZeroInputError();
    std::set<Int> out;
    for (const auto& [p, e] : factorize(n)) out.insert(p);
    return out;
}

}  // namespace langparams::exactalg
