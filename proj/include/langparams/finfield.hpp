// finfield.hpp -- small finite fields F_{ell^k} with deterministic moduli and
// canonical element indexing (coefficient tuples, low-degree digit first).
#pragma once

#include <vector>

namespace langparams::fingrp {

class FiniteField {
  public:
    // ell prime, 1 <= k <= 4, ell^k <= 4096; modulus is the lexicographically
    // smallest monic irreducible of degree k (constant coefficient compared
    // first). Throws NotPrimeError / ValidationError.
    FiniteField(long ell, int k);

    long ell() const { return ell_; }
    int k() const { return k_; }
    long size() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    int zero() const { return 0; }
    int one() const { return one_; }

    int add(int a, int b) const;
    int sub(int a, int b) const { return add(a, neg(b)); }
    int neg(int a) const;
    int mul(int a, int b) const;
    int inv(int a) const;
    int pow(int a, long long e) const;
    int frobenius(int a) const { return pow(a, ell_); }
    // v mod ell, embedded in the prime subfield.
    int from_int(long long v) const;
    // Multiplicative order of a nonzero element.
    long element_order(int a) const;
    int generator() const { return exp_[1]; }
    // Smallest-index square root if one exists, -1 otherwise.
    int sqrt(int a) const;

    bool operator==(const FiniteField& o) const {
        return ell_ == o.ell_ && k_ == o.k_;
    }

  private:
    long ell_;
    int k_;
    long q_;
    int one_;
    std::vector<int> modulus_;
    std::vector<int> exp_;  // exp_[i] = generator^i, length q-1
    std::vector<int> log_;  // log_[x] for x != 0
};

// Degree-k irreducibility certificate over F_ell: gcd(x^{ell^i} - x, m) = 1
// for 0 < i < k and x^{ell^k} = x mod m.
bool certify_irreducible(long ell, const std::vector<int>& monic);

}  // namespace langparams::fingrp
