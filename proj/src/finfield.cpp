#include "langparams/finfield.hpp"

#include "langparams/errors.hpp"

#include <algorithm>
#include <numeric>

namespace langparams::fingrp {

namespace {

bool small_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

using Poly = std::vector<int>;  // coefficients mod ell, ascending, trimmed

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& m, long ell) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<int>((r[i + j] + 1LL * a[i] * b[j]) % ell);
    // reduce mod m (monic)
    int dm = static_cast<int>(m.size()) - 1;
    for (int i = static_cast<int>(r.size()) - 1; i >= dm; --i) {
        int c = r[i];
        if (c == 0) continue;
        for (int j = 0; j <= dm; ++j) {
            long long v = r[i - dm + j] - 1LL * c * m[j];
            r[i - dm + j] = static_cast<int>(((v % ell) + ell) % ell);
        }
    }
    r.resize(std::min<size_t>(r.size(), dm));
    trim(r);
    return r;
}

Poly poly_mod(Poly r, const Poly& m, long ell) {
    int dm = static_cast<int>(m.size()) - 1;
    for (int i = static_cast<int>(r.size()) - 1; i >= dm; --i) {
        int c = r[i];
        if (c == 0) continue;
        for (int j = 0; j <= dm; ++j) {
            long long v = r[i - dm + j] - 1LL * c * m[j];
            r[i - dm + j] = static_cast<int>(((v % ell) + ell) % ell);
        }
    }
    r.resize(std::min<size_t>(r.size(), static_cast<size_t>(dm)));
    trim(r);
    return r;
}

Poly poly_gcd(Poly a, Poly b, long ell) {
    auto inv_mod = [&](int x) {
        int r = 1, base = x;
        long e = ell - 2;
        while (e) {
            if (e & 1) r = static_cast<int>(1LL * r * base % ell);
            base = static_cast<int>(1LL * base * base % ell);
            e >>= 1;
        }
        return r;
    };
    while (!b.empty()) {
        // a mod b via scaling b monic
        int lead = b.back();
        Poly bm = b;
        if (lead != 1) {
            int li = inv_mod(lead);
            for (auto& c : bm) c = static_cast<int>(1LL * c * li % ell);
        }
        Poly r = poly_mod(a, bm, ell);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly x_pow_q_mod(long long q, const Poly& m, long ell) {
    // x^q mod m by square and multiply
    Poly result{1};
    Poly base{0, 1};
    base = poly_mod(base, m, ell);
    while (q) {
        if (q & 1) result = poly_mul_mod(result, base, m, ell);
        base = poly_mul_mod(base, base, m, ell);
        q >>= 1;
    }
    return result;
}

}  // namespace

bool certify_irreducible(long ell, const std::vector<int>& monic) {
    int k = static_cast<int>(monic.size()) - 1;
    if (k < 1 || monic[k] != 1) return false;
    Poly x{0, 1};
    long long lp = ell;
    for (int i = 1; i < k; ++i) {
        Poly xq = x_pow_q_mod(lp, monic, ell);
        // xq - x
        Poly diff = xq;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = static_cast<int>(((diff[1] - 1) % ell + ell) % ell);
        trim(diff);
        Poly g = poly_gcd(monic, diff, ell);
        if (static_cast<int>(g.size()) - 1 != 0) return false;
        lp *= ell;
    }
    Poly xq = x_pow_q_mod(lp, monic, ell);
    return xq == x || (k == 1 && xq == poly_mod(x, monic, ell));
}

FiniteField::FiniteField(long ell, int k) : ell_(ell), k_(k) {
    if (!small_prime(ell)) throw NotPrimeError(ell);
    if (k < 1 || k > 4) throw ValidationError("extension degree must be in [1,4]");
    q_ = 1;
    for (int i = 0; i < k; ++i) {
        q_ *= ell;
        if (q_ > 4096) throw ValidationError("field size exceeds 4096");
    }

    if (k == 1) {
        modulus_ = {0, 1};  // x
    } else {
        // Lexicographically smallest monic irreducible, constant digit first.
        bool found = false;
        std::vector<int> low(k, 0);
        long total = q_;
        for (long idx = 0; idx < total && !found; ++idx) {
            long v = idx;
            for (int i = 0; i < k; ++i) {
                low[i] = static_cast<int>(v % ell);
                v /= ell;
            }
            std::vector<int> cand(low);
            cand.push_back(1);
            if (certify_irreducible(ell, cand)) {
                modulus_ = cand;
                found = true;
            }
        }
        if (!found) throw ValidationError("no irreducible modulus found");
    }

    one_ = 1;

    // Index <-> polynomial digit conversions.
    auto to_poly = [&](int idx) {
        Poly p;
        long v = idx;
        for (int i = 0; i < k_; ++i) {
            p.push_back(static_cast<int>(v % ell_));
            v /= ell_;
        }
        trim(p);
        return p;
    };
    auto to_index = [&](const Poly& p) {
        long idx = 0, mult = 1;
        for (int i = 0; i < k_; ++i) {
            int c = i < static_cast<int>(p.size()) ? p[i] : 0;
            idx += c * mult;
            mult *= ell_;
        }
        return static_cast<int>(idx);
    };

    // Find a multiplicative generator, then build log/exp tables.
    std::vector<long> prime_factors;
    long m = q_ - 1;
    for (long d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            prime_factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) prime_factors.push_back(m);

    auto pow_index = [&](int base, long e) {
        Poly acc{1};
        Poly b = to_poly(base);
        while (e) {
            if (e & 1) acc = poly_mul_mod(acc, b, modulus_, ell_);
            b = poly_mul_mod(b, b, modulus_, ell_);
            e >>= 1;
        }
        return to_index(acc);
    };

    int gen = -1;
    for (int cand = 1; cand < q_; ++cand) {
        bool ok = true;
        for (long pf : prime_factors)
            if (pow_index(cand, (q_ - 1) / pf) == one_) {
                ok = false;
                break;
            }
        if (ok && pow_index(cand, q_ - 1) == one_) {
            gen = cand;
            break;
        }
    }
    if (gen < 0) throw ValidationError("no generator found (internal)");

    exp_.resize(q_ - 1);
    log_.assign(q_, -1);
    Poly acc{1};
    Poly g = to_poly(gen);
    for (long i = 0; i < q_ - 1; ++i) {
        int idx = to_index(acc);
        exp_[i] = idx;
        log_[idx] = static_cast<int>(i);
        acc = poly_mul_mod(acc, g, modulus_, ell_);
    }
}

int FiniteField::add(int a, int b) const {
    int r = 0, mult = 1;
    for (int i = 0; i < k_; ++i) {
        int da = a % ell_, db = b % ell_;
        a /= static_cast<int>(ell_);
        b /= static_cast<int>(ell_);
        r += static_cast<int>((da + db) % ell_) * mult;
        mult *= static_cast<int>(ell_);
    }
    return r;
}

int FiniteField::neg(int a) const {
    int r = 0, mult = 1;
    for (int i = 0; i < k_; ++i) {
        int da = a % ell_;
        a /= static_cast<int>(ell_);
        r += static_cast<int>((ell_ - da) % ell_) * mult;
        mult *= static_cast<int>(ell_);
    }
    return r;
}

int FiniteField::mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    long s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
}

int FiniteField::inv(int a) const {
    if (a == 0) throw ValidationError("inverse of zero field element");
    long s = (q_ - 1 - log_[a]) % (q_ - 1);
    return exp_[s];
}

int FiniteField::pow(int a, long long e) const {
    if (a == 0) return e == 0 ? one_ : 0;
    long long s = (log_[a] * (e % (q_ - 1))) % (q_ - 1);
    if (s < 0) s += q_ - 1;
    return exp_[s];
}

int FiniteField::from_int(long long v) const {
    long r = static_cast<long>(((v % ell_) + ell_) % ell_);
    return static_cast<int>(r);
}

long FiniteField::element_order(int a) const {
    if (a == 0) throw ValidationError("order of zero field element");
    long l = log_[a];
    if (l == 0) return 1;
    return (q_ - 1) / std::gcd(q_ - 1, l);
}

int FiniteField::sqrt(int a) const {
    if (a == 0) return 0;
    long l = log_[a];
    int r = -1;
    if (l % 2 == 0) {
        r = exp_[l / 2];
    } else if ((q_ - 1) % 2 == 1) {
        // odd group order: everything is a square
        r = exp_[((l + q_ - 1) / 2) % (q_ - 1)];
    }
    if (r < 0) return -1;
    return std::min(r, neg(r));
}

}  // namespace langparams::fingrp
