#include "langparams/fingroup.hpp"

#include "langparams/errors.hpp"
#include "langparams/primes.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace langparams::fingrp {

FqMatrix FqMatrix::identity(const FiniteField& f, int n) {
    FqMatrix m = zero(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
}

FqMatrix mat_mul(const FiniteField& f, const FqMatrix& a, const FqMatrix& b) {
    FqMatrix r = FqMatrix::zero(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k) {
            int av = a.at(i, k);
            if (av == 0) continue;
            for (int j = 0; j < a.n; ++j) {
                int bv = b.at(k, j);
                if (bv == 0) continue;
                r.at(i, j) = f.add(r.at(i, j), f.mul(av, bv));
            }
        }
    return r;
}

FqMatrix mat_transpose(const FqMatrix& a) {
    FqMatrix r = FqMatrix::zero(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) r.at(j, i) = a.at(i, j);
    return r;
}

namespace {

// Gaussian elimination returning (det, inverse?) -- inverse only when wanted.
int eliminate(const FiniteField& f, FqMatrix a, FqMatrix* inv_out) {
    int n = a.n;
    FqMatrix inv = FqMatrix::identity(f, n);
    int det = f.one();
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a.e[size_t(pivot) * n + j], a.e[size_t(col) * n + j]);
                std::swap(inv.e[size_t(pivot) * n + j], inv.e[size_t(col) * n + j]);
            }
            det = f.neg(det);
        }
        int p = a.at(col, col);
        det = f.mul(det, p);
        int pi = f.inv(p);
        for (int j = 0; j < n; ++j) {
            a.at(col, j) = f.mul(a.at(col, j), pi);
            inv.at(col, j) = f.mul(inv.at(col, j), pi);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            int factor = a.at(r, col);
            if (factor == 0) continue;
            for (int j = 0; j < n; ++j) {
                a.at(r, j) = f.sub(a.at(r, j), f.mul(factor, a.at(col, j)));
                inv.at(r, j) = f.sub(inv.at(r, j), f.mul(factor, inv.at(col, j)));
            }
        }
    }
    if (inv_out) *inv_out = inv;
    return det;
}

}  // namespace

int mat_det(const FiniteField& f, const FqMatrix& a) { return eliminate(f, a, nullptr); }

FqMatrix mat_inv(const FiniteField& f, const FqMatrix& a) {
    FqMatrix inv;
    if (eliminate(f, a, &inv) == 0) throw ValidationError("matrix not invertible");
    return inv;
}

FqMatrix mat_pow(const FiniteField& f, const FqMatrix& a, const Int& e) {
    FqMatrix r = FqMatrix::identity(f, a.n), b = a;
    Int k = e;
    while (k > 0) {
        if ((k & 1) != 0) r = mat_mul(f, r, b);
        b = mat_mul(f, b, b);
        k >>= 1;
    }
    return r;
}

bool mat_is_identity(const FiniteField& f, const FqMatrix& a) {
    return a == FqMatrix::identity(f, a.n);
}

bool mat_is_unipotent(const FiniteField& f, const FqMatrix& a) {
    FqMatrix d = a;
    for (int i = 0; i < a.n; ++i) d.at(i, i) = f.sub(d.at(i, i), f.one());
    FqMatrix p = d;
    for (int i = 1; i < a.n; ++i) p = mat_mul(f, p, d);
    return std::all_of(p.e.begin(), p.e.end(), [](int x) { return x == 0; });
}

GroupSpecFin::GroupSpecFin(GroupKind k, int n_, FiniteField f)
    : kind(k), n(n_), field(std::move(f)) {
    if (kind == GroupKind::Sp) {
        if (n % 2 != 0) throw ValidationError("Sp requires even matrix size");
        int m = n / 2;
        form_j = FqMatrix::zero(n);
        for (int i = 0; i < m; ++i) {
            form_j.at(i, m + i) = field.one();
            form_j.at(m + i, i) = field.neg(field.one());
        }
    }
}

bool GroupSpecFin::contains(const FqMatrix& g) const {
    if (g.n != n) return false;
    int det = mat_det(field, g);
    if (det == 0) return false;
    if (kind == GroupKind::SL && det != field.one()) return false;
    if (kind == GroupKind::Sp) {
        FqMatrix check = mat_mul(field, mat_transpose(g), mat_mul(field, form_j, g));
        if (check != form_j) return false;
    }
    return true;
}

Int GroupSpecFin::order_formula() const {
    Int q = field.size();
    Int order = 1;
    if (kind == GroupKind::GL || kind == GroupKind::SL) {
        // q^{n(n-1)/2} * prod_{d=1}^{n} (q^d - 1)
        order = int_pow(q, static_cast<unsigned long>(n) * (n - 1) / 2);
        for (int d = 1; d <= n; ++d) order *= int_pow(q, d) - 1;
        if (kind == GroupKind::SL) order /= q - 1;
    } else {
        int m = n / 2;
        order = int_pow(q, static_cast<unsigned long>(m) * m);
        for (int d = 1; d <= m; ++d) order *= int_pow(q, 2 * d) - 1;
    }
    return order;
}

namespace {

// Row-by-row enumeration with pruning. Rows are produced in ascending
// lexicographic order on entry indices, so the output is canonically sorted.
struct RowEnumerator {
    const GroupSpecFin& spec;
    const FiniteField& f;
    int n;
    long q;
    std::vector<FqMatrix> out;
    std::vector<std::vector<int>> rows;
    // Echelon state for GL/SL rank pruning.
    std::vector<std::vector<int>> echelon;

    explicit RowEnumerator(const GroupSpecFin& s)
        : spec(s), f(s.field), n(s.n), q(s.field.size()) {}

    bool independent_of_echelon(const std::vector<int>& row) {
        std::vector<int> v = row;
        for (const auto& e : echelon) {
            int lead = -1;
            for (int j = 0; j < n; ++j)
                if (e[j] != 0) {
                    lead = j;
                    break;
                }
            if (lead >= 0 && v[lead] != 0) {
                int factor = f.mul(v[lead], f.inv(e[lead]));
                for (int j = 0; j < n; ++j) v[j] = f.sub(v[j], f.mul(factor, e[j]));
            }
        }
        return std::any_of(v.begin(), v.end(), [](int x) { return x != 0; });
    }

    std::vector<int> reduce_against_echelon(const std::vector<int>& row) {
        std::vector<int> v = row;
        for (const auto& e : echelon) {
            int lead = -1;
            for (int j = 0; j < n; ++j)
                if (e[j] != 0) {
                    lead = j;
                    break;
                }
            if (lead >= 0 && v[lead] != 0) {
                int factor = f.mul(v[lead], f.inv(e[lead]));
                for (int j = 0; j < n; ++j) v[j] = f.sub(v[j], f.mul(factor, e[j]));
            }
        }
        return v;
    }

    bool sp_ok(const std::vector<int>& row, int k) {
        // <r_i, J r_k> = J_{ik} for all i <= k, with <x,y> = x J y^T.
        for (int i = 0; i <= k; ++i) {
            const std::vector<int>& ri = i == k ? row : rows[i];
            int acc = 0;
            for (int a = 0; a < n; ++a) {
                if (ri[a] == 0) continue;
                for (int b = 0; b < n; ++b) {
                    int jv = spec.form_j.at(a, b);
                    if (jv == 0 || row[b] == 0) continue;
                    acc = f.add(acc, f.mul(ri[a], f.mul(jv, row[b])));
                }
            }
            if (acc != spec.form_j.at(i, k)) return false;
        }
        return true;
    }

    void recurse(int k) {
        if (k == n) {
            FqMatrix g(n, {});
            g.e.reserve(size_t(n) * n);
            for (const auto& r : rows) g.e.insert(g.e.end(), r.begin(), r.end());
            if (spec.kind == GroupKind::SL && mat_det(f, g) != f.one()) return;
            out.push_back(std::move(g));
            return;
        }
        std::vector<int> row(n, 0);
        while (true) {
            bool admissible;
            if (spec.kind == GroupKind::Sp) {
                admissible = sp_ok(row, k);
            } else {
                admissible = independent_of_echelon(row);
            }
            if (admissible) {
                rows.push_back(row);
                std::vector<int> reduced;
                if (spec.kind != GroupKind::Sp) {
                    reduced = reduce_against_echelon(row);
                    echelon.push_back(reduced);
                }
                recurse(k + 1);
                rows.pop_back();
                if (spec.kind != GroupKind::Sp) echelon.pop_back();
            }
            // odometer: advance the row in lexicographic order
            int pos = n - 1;
            while (pos >= 0) {
                if (++row[pos] < q) break;
                row[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
};

}  // namespace

std::vector<FqMatrix> enumerate_group(const GroupSpecFin& spec, std::uint64_t cap) {
    Int estimate = spec.order_formula();
    if (estimate > cap) {
        std::uint64_t est64 =
            estimate > std::numeric_limits<std::uint64_t>::max() ? ~0ull : static_cast<std::uint64_t>(estimate);
        throw GroupTooLargeError(est64);
    }
    RowEnumerator en(spec);
    en.out.reserve(static_cast<size_t>(estimate));
    en.recurse(0);
    return en.out;
}

Int element_order(const FiniteField& f, const FqMatrix& g, const Int& group_order_hint) {
    if (group_order_hint > 0 && group_order_hint > 10000) {
        // Factor the order bound and descend.
        Int m = group_order_hint;
        if (!mat_is_identity(f, mat_pow(f, g, m)))
            throw ValidationError("element order does not divide the group order hint");
        for (const auto& [p, e] : exactalg::factorize(group_order_hint)) {
            for (int i = 0; i < e; ++i) {
                Int cand = m / p;
                if (mat_is_identity(f, mat_pow(f, g, cand)))
                    m = cand;
                else
                    break;
            }
        }
        return m;
    }
    FqMatrix p = g;
    Int m = 1;
    while (!mat_is_identity(f, p)) {
        p = mat_mul(f, p, g);
        ++m;
        if (m > Int(100000000)) throw ValidationError("element order out of range");
    }
    return m;
}

JordanParts jordan(const FiniteField& f, const FqMatrix& g) {
    Int m = element_order(f, g);
    Int ellv = 1;
    Int r = m;
    while (r % f.ell() == 0) {
        r /= f.ell();
        ellv *= f.ell();
    }
    if (ellv == 1) return {g, FqMatrix::identity(f, g.n)};
    if (r == 1) return {FqMatrix::identity(f, g.n), g};
    // CRT exponents: s = g^{ellv * x} with ellv*x = 1 mod r, u = g^{r * y} with r*y = 1 mod ellv.
    auto inv_mod = [](const Int& a, const Int& m) {
        Int old_r = mod_nonneg(a, m), rr = m;
        Int old_s = 1, s = 0;
        while (rr != 0) {
            Int qq = old_r / rr;
            Int tmp = old_r - qq * rr;
            old_r = rr;
            rr = tmp;
            tmp = old_s - qq * s;
            old_s = s;
            s = tmp;
        }
        return mod_nonneg(old_s, m);
    };
    Int x = inv_mod(ellv, r), y = inv_mod(r, ellv);
    JordanParts parts;
    parts.s = mat_pow(f, g, ellv * x);
    parts.u = mat_pow(f, g, r * y);
    return parts;
}

std::vector<ConjugacyClass> conjugacy_reps(const FiniteField& f,
                                           const std::vector<FqMatrix>& elements,
                                           const std::vector<FqMatrix>& subgroup) {
    std::map<FqMatrix, bool> pending;
    for (const auto& g : elements) pending[g] = true;
    std::vector<ConjugacyClass> classes;
    // Precompute inverses once.
    std::vector<FqMatrix> inverses;
    inverses.reserve(subgroup.size());
    for (const auto& h : subgroup) inverses.push_back(mat_inv(f, h));
    for (const auto& g : elements) {
        auto it = pending.find(g);
        if (it == pending.end() || !it->second) continue;
        std::map<FqMatrix, bool> orbit;
        for (size_t i = 0; i < subgroup.size(); ++i) {
            FqMatrix conj = mat_mul(f, subgroup[i], mat_mul(f, g, inverses[i]));
            orbit[conj] = true;
        }
        ConjugacyClass cls;
        cls.representative = orbit.begin()->first;
        cls.size = orbit.size();
        for (auto& [m, _] : orbit) {
            cls.members.push_back(m);
            auto pit = pending.find(m);
            if (pit != pending.end()) pit->second = false;
        }
        classes.push_back(std::move(cls));
    }
    return classes;
}

GroupTable::GroupTable(const FiniteField& f, std::vector<FqMatrix> elems)
    : field(&f), elements(std::move(elems)) {
    sorted_.reserve(elements.size());
    for (size_t i = 0; i < elements.size(); ++i)
        sorted_.emplace_back(elements[i], static_cast<int>(i));
    std::sort(sorted_.begin(), sorted_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

int GroupTable::index_of(const FqMatrix& g) const {
    auto it = std::lower_bound(
        sorted_.begin(), sorted_.end(), g,
        [](const std::pair<FqMatrix, int>& p, const FqMatrix& v) { return p.first < v; });
    if (it == sorted_.end() || !(it->first == g)) return -1;
    return it->second;
}

int GroupTable::mul(int a, int b) const {
    return index_of(mat_mul(*field, elements[a], elements[b]));
}

int GroupTable::inv(int a) const { return index_of(mat_inv(*field, elements[a])); }

}  // namespace langparams::fingrp
