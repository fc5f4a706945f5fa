#include "langparams/rootdata.hpp"

#include "langparams/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace langparams::rootdata {

SmallMat SmallMat::identity(int n) {
    SmallMat m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

SmallMat SmallMat::operator*(const SmallMat& o) const {
    SmallMat r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            long long a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < n; ++j) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

Vec SmallMat::apply(const Vec& v) const {
    Vec r(n, 0);
    for (int i = 0; i < n; ++i) {
        long long acc = 0;
        for (int j = 0; j < n; ++j) acc += at(i, j) * v[j];
        r[i] = acc;
    }
    return r;
}

bool SmallMat::is_identity() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

unsigned long SmallMat::order(unsigned long bound) const {
    SmallMat p = *this;
    for (unsigned long m = 1; m <= bound; ++m) {
        if (p.is_identity()) return m;
        p = p * (*this);
    }
    return 0;
}

SmallMat SmallMat::inverse_of_finite_order(unsigned long order_bound) const {
    unsigned long m = order(order_bound);
    if (m == 0) throw ValidationError("matrix has no detected finite order");
    SmallMat p = identity(n);
    for (unsigned long i = 0; i + 1 < m; ++i) p = p * (*this);
    return p;
}

IntMatrix SmallMat::to_int_matrix() const {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = at(i, j);
    return m;
}

SmallMat SmallMat::from_int_matrix(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw ValidationError("expected a square matrix");
    SmallMat s(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s.at(i, j) = static_cast<long long>(m.at(i, j));
    return s;
}

namespace {

constexpr int kMaxClassicalRank = 12;

struct ComponentBuild {
    std::string label;
    Family family = Family::Torus;
    int family_rank = 0;
    int rank = 0;  // lattice rank
    std::vector<Vec> simple_roots;
    std::vector<Vec> simple_coroots;
    bool cartan_basis = false;
};

Vec unit(int rank, int i, long long v = 1) {
    Vec r(rank, 0);
    r[i] = v;
    return r;
}

std::vector<std::vector<int>> cartan_matrix_for(Family fam, int n) {
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    switch (fam) {
        case Family::A:
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            break;
        case Family::G:
            a[0][1] = -1;
            a[1][0] = -3;
            break;
        case Family::F:
            link(0, 1);
            a[1][2] = -1;
            a[2][1] = -2;
            link(2, 3);
            break;
        case Family::E:
            // Bourbaki numbering: chain 1-3-4-5-...-n with node 2 on node 4.
            link(0, 2);
            link(2, 3);
            link(1, 3);
            for (int i = 3; i + 1 < n; ++i) link(i, i + 1);
            break;
        default:
            throw ValidationError("no stored Cartan matrix for this family");
    }
    return a;
}

ComponentBuild build_cartan_basis(Family fam, int n, const std::string& label) {
    ComponentBuild c;
    c.label = label;
    c.family = fam;
    c.family_rank = n;
    c.rank = n;
    c.cartan_basis = true;
    std::vector<std::vector<int>> a;
    if (fam == Family::D) {
        a.assign(n, std::vector<int>(n, 0));
        for (int i = 0; i < n; ++i) a[i][i] = 2;
        for (int i = 0; i + 2 < n; ++i) a[i][i + 1] = a[i + 1][i] = -1;
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1;
    } else {
        a = cartan_matrix_for(fam, n);
    }
    for (int i = 0; i < n; ++i) {
        c.simple_roots.push_back(unit(n, i));
        Vec covec(n, 0);
        for (int j = 0; j < n; ++j) covec[j] = a[i][j];
        c.simple_coroots.push_back(covec);
    }
    return c;
}

ComponentBuild build_component(const std::string& token, int triality_hint) {
    auto starts = [&](const char* p) { return token.rfind(p, 0) == 0; };
    auto num_after = [&](size_t k) -> int {
        if (token.size() <= k) throw UnsupportedTypeError(token);
        for (size_t i = k; i < token.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(token[i])))
                throw UnsupportedTypeError(token);
        return std::stoi(token.substr(k));
    };

    ComponentBuild c;
    c.label = token;

    if (starts("GL")) {
        int n = num_after(2);
        if (n < 1 || n > kMaxClassicalRank) throw UnsupportedTypeError(token);
        c.family = Family::GL;
        c.family_rank = n;
        c.rank = n;
        for (int i = 0; i + 1 < n; ++i) {
            Vec r(n, 0);
            r[i] = 1;
            r[i + 1] = -1;
            c.simple_roots.push_back(r);
            c.simple_coroots.push_back(r);
        }
        return c;
    }
    if (starts("SL")) {
        int n = num_after(2);
        if (n < 1 || n > kMaxClassicalRank) throw UnsupportedTypeError(token);
        // X = Z^n / Z(1,...,1) with basis the images of e_1..e_{n-1}.
        c.family = Family::A;
        c.family_rank = n - 1;
        c.rank = n - 1;
        for (int i = 0; i + 1 < n; ++i) {
            Vec root(n - 1, 0);
            if (i + 1 < n - 1) {
                root[i] = 1;
                root[i + 1] = -1;
            } else {
                for (int j = 0; j + 1 < n - 1; ++j) root[j] = 1;
                if (n >= 2) root[n - 2] = 2;
            }
            Vec coroot(n - 1, 0);
            coroot[i] = 1;
            if (i + 1 < n - 1) coroot[i + 1] = -1;
            c.simple_roots.push_back(root);
            c.simple_coroots.push_back(coroot);
        }
        return c;
    }
    if (starts("Sp")) {
        int m = num_after(2);
        if (m < 2 || m % 2 != 0 || m / 2 > kMaxClassicalRank) throw UnsupportedTypeError(token);
        int n = m / 2;
        c.family = Family::C;
        c.family_rank = n;
        c.rank = n;
        for (int i = 0; i + 1 < n; ++i) {
            Vec r(n, 0);
            r[i] = 1;
            r[i + 1] = -1;
            c.simple_roots.push_back(r);
            c.simple_coroots.push_back(r);
        }
        c.simple_roots.push_back(unit(n, n - 1, 2));
        c.simple_coroots.push_back(unit(n, n - 1, 1));
        return c;
    }
    if (starts("SO")) {
        int m = num_after(2);
        if (m < 3 || m / 2 > kMaxClassicalRank) throw UnsupportedTypeError(token);
        if (m % 2 == 1) {
            int n = m / 2;
            ComponentBuild b;
            b.label = token;
            b.family = Family::B;
            b.family_rank = n;
            b.rank = n;
            for (int i = 0; i + 1 < n; ++i) {
                Vec r(n, 0);
                r[i] = 1;
                r[i + 1] = -1;
                b.simple_roots.push_back(r);
                b.simple_coroots.push_back(r);
            }
            b.simple_roots.push_back(unit(n, n - 1, 1));
            b.simple_coroots.push_back(unit(n, n - 1, 2));
            return b;
        }
        int n = m / 2;
        if (n < 2) throw UnsupportedTypeError(token);
        if (triality_hint == 3) {
            if (n != 4) throw UnsupportedTypeError(token + " with twist order 3");
            ComponentBuild b = build_cartan_basis(Family::D, 4, token);
            return b;
        }
        ComponentBuild b;
        b.label = token;
        b.family = Family::D;
        b.family_rank = n;
        b.rank = n;
        for (int i = 0; i + 1 < n; ++i) {
            Vec r(n, 0);
            r[i] = 1;
            r[i + 1] = -1;
            b.simple_roots.push_back(r);
            b.simple_coroots.push_back(r);
        }
        Vec last(n, 0);
        last[n - 2] = 1;
        last[n - 1] = 1;
        b.simple_roots.push_back(last);
        b.simple_coroots.push_back(last);
        return b;
    }
    if (token[0] == 'T') {
        int r = num_after(1);
        if (r < 0 || r > 24) throw UnsupportedTypeError(token);
        c.family = Family::Torus;
        c.family_rank = r;
        c.rank = r;
        return c;
    }
    if (token[0] == 'A' || token[0] == 'B' || token[0] == 'C' || token[0] == 'D') {
        int n = num_after(1);
        if (n < 1 || n > kMaxClassicalRank) throw UnsupportedTypeError(token);
        Family fam = token[0] == 'A'   ? Family::A
                     : token[0] == 'B' ? Family::B
                     : token[0] == 'C' ? Family::C
                                       : Family::D;
        if (fam == Family::A) return build_cartan_basis(Family::A, n, token);
        if (fam == Family::D && n < 2) throw UnsupportedTypeError(token);
        if (fam == Family::D && triality_hint == 3) {
            if (n != 4) throw UnsupportedTypeError(token + " with twist order 3");
            return build_cartan_basis(Family::D, 4, token);
        }
        // Signed-permutation realizations.
        ComponentBuild b;
        b.label = token;
        b.family = fam;
        b.family_rank = n;
        b.rank = n;
        for (int i = 0; i + 1 < n; ++i) {
            Vec r(n, 0);
            r[i] = 1;
            r[i + 1] = -1;
            b.simple_roots.push_back(r);
            b.simple_coroots.push_back(r);
        }
        if (fam == Family::B) {
            b.simple_roots.push_back(unit(n, n - 1, 1));
            b.simple_coroots.push_back(unit(n, n - 1, 2));
        } else if (fam == Family::C) {
            b.simple_roots.push_back(unit(n, n - 1, 2));
            b.simple_coroots.push_back(unit(n, n - 1, 1));
        } else {
            Vec last(n, 0);
            last[n - 2] = 1;
            last[n - 1] = 1;
            b.simple_roots.push_back(last);
            b.simple_coroots.push_back(last);
        }
        return b;
    }
    if (token == "G2") return build_cartan_basis(Family::G, 2, token);
    if (token == "F4") return build_cartan_basis(Family::F, 4, token);
    if (token == "E6" || token == "E7" || token == "E8")
        return build_cartan_basis(Family::E, token[1] - '0', token);
    throw UnsupportedTypeError(token);
}

long long dot(const Vec& a, const Vec& b) {
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Reflection closure of the simple (root, coroot) pairs.
void close_roots(BasedRootDatum& d) {
    std::set<Vec> seen;
    std::vector<std::pair<Vec, Vec>> work;
    std::vector<std::pair<Vec, Vec>> simples;
    for (int idx : d.simple_indices) simples.emplace_back(d.roots[idx], d.coroots[idx]);
    for (auto& pr : simples)
        if (seen.insert(pr.first).second) work.push_back(pr);
    for (size_t head = 0; head < work.size(); ++head) {
        auto [beta, beta_co] = work[head];
        for (const auto& [alpha, alpha_co] : simples) {
            long long pairing = dot(beta, alpha_co);
            long long copairing = dot(alpha, beta_co);
            Vec nr = beta, nc = beta_co;
            for (size_t t = 0; t < nr.size(); ++t) nr[t] -= pairing * alpha[t];
            for (size_t t = 0; t < nc.size(); ++t) nc[t] -= copairing * alpha_co[t];
            if (seen.insert(nr).second) work.emplace_back(nr, nc);
        }
    }
    // Rebuild root lists with the simples at their original indices.
    std::map<Vec, Vec> co_of;
    for (auto& [r, c] : work) co_of[r] = c;
    std::vector<Vec> roots, coroots;
    std::vector<int> simple_indices;
    for (auto& [r, c] : simples) {
        simple_indices.push_back(static_cast<int>(roots.size()));
        roots.push_back(r);
        coroots.push_back(c);
        co_of.erase(r);
    }
    for (auto& [r, c] : co_of) {
        roots.push_back(r);
        coroots.push_back(c);
    }
    d.roots = std::move(roots);
    d.coroots = std::move(coroots);
    d.simple_indices = std::move(simple_indices);
}

std::vector<std::string> split_product(const std::string& spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : spec) {
        if (ch == 'x') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

BasedRootDatum assemble(const std::vector<ComponentBuild>& comps, const std::string& label) {
    BasedRootDatum d;
    d.label = label;
    int rank = 0;
    for (const auto& c : comps) rank += c.rank;
    d.rank = rank;
    int offset = 0;
    for (const auto& c : comps) {
        if (c.family != Family::Torus && !c.simple_roots.empty()) {
            FactorInfo fi;
            fi.label = c.label;
            fi.family = c.family;
            fi.family_rank = c.family_rank;
            fi.lat_offset = offset;
            fi.lat_rank = c.rank;
            fi.simple_offset = static_cast<int>(d.simple_indices.size());
            fi.simple_count = static_cast<int>(c.simple_roots.size());
            fi.cartan_basis = c.cartan_basis;
            d.factors.push_back(fi);
        }
        for (size_t s = 0; s < c.simple_roots.size(); ++s) {
            Vec root(rank, 0), coroot(rank, 0);
            for (int j = 0; j < c.rank; ++j) {
                root[offset + j] = c.simple_roots[s][j];
                coroot[offset + j] = c.simple_coroots[s][j];
            }
            d.simple_indices.push_back(static_cast<int>(d.roots.size()));
            d.roots.push_back(root);
            d.coroots.push_back(coroot);
        }
        offset += c.rank;
    }
    close_roots(d);
    d.central_rank = d.rank - static_cast<int>(d.simple_indices.size());
    int ns = static_cast<int>(d.simple_indices.size());
    d.cartan = IntMatrix(ns, ns);
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ns; ++j)
            d.cartan.at(i, j) = dot(d.roots[d.simple_indices[j]], d.coroots[d.simple_indices[i]]);
    return d;
}

}  // namespace

BasedRootDatum build_root_datum(const std::string& spec) {
    return build_root_datum_for_twist(spec, 1);
}

BasedRootDatum build_root_datum_for_twist(const std::string& spec, int twist_order) {
    if (spec.empty()) throw UnsupportedTypeError(spec);
    std::vector<ComponentBuild> comps;
    for (const auto& token : split_product(spec)) comps.push_back(build_component(token, twist_order));
    return assemble(comps, spec);
}

BasedRootDatum build_product(const std::vector<std::pair<std::string, int>>& components) {
    if (components.empty()) throw UnsupportedTypeError("");
    std::vector<ComponentBuild> comps;
    std::string label;
    for (const auto& [token, hint] : components) {
        comps.push_back(build_component(token, hint));
        if (!label.empty()) label += "x";
        label += token;
    }
    return assemble(comps, label);
}

unsigned long long BasedRootDatum::weyl_order_formula() const {
    auto fact = [](int n) {
        unsigned long long f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    unsigned long long total = 1;
    for (const auto& f : factors) {
        int n = f.family_rank;
        switch (f.family) {
            case Family::A: total *= fact(n + 1); break;
            case Family::GL: total *= fact(n); break;
            case Family::B:
            case Family::C: total *= (1ULL << n) * fact(n); break;
            case Family::D: total *= (1ULL << (n - 1)) * fact(n); break;
            case Family::G: total *= 12ULL; break;
            case Family::F: total *= 1152ULL; break;
            case Family::E:
                total *= (n == 6 ? 51840ULL : n == 7 ? 2903040ULL : 696729600ULL);
                break;
            case Family::Torus: break;
        }
    }
    return total;
}

std::vector<SmallMat> weyl_elements(const BasedRootDatum& d, unsigned long bound) {
    unsigned long long predicted = d.weyl_order_formula();
    if (predicted > bound) throw WeylTooLargeError(predicted);

    std::vector<SmallMat> gens;
    for (int idx : d.simple_indices) {
        SmallMat s = SmallMat::identity(d.rank);
        const Vec& alpha = d.roots[idx];
        const Vec& alpha_co = d.coroots[idx];
        for (int r = 0; r < d.rank; ++r)
            for (int c = 0; c < d.rank; ++c) s.at(r, c) -= alpha[r] * alpha_co[c];
        gens.push_back(s);
    }

    struct VecHash {
        size_t operator()(const std::vector<long long>& v) const {
            size_t h = 1469598103934665603ull;
            for (long long x : v) {
                h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
                h *= 1099511628211ull;
            }
            return h;
        }
    };

    std::vector<SmallMat> elems;
    std::unordered_set<std::vector<long long>, VecHash> seen;
    elems.push_back(SmallMat::identity(d.rank));
    seen.insert(elems[0].e);
    for (size_t head = 0; head < elems.size(); ++head) {
        SmallMat w = elems[head];
        for (const auto& g : gens) {
            SmallMat nw = g * w;
            if (seen.insert(nw.e).second) {
                elems.push_back(nw);
                if (elems.size() > bound) throw WeylTooLargeError(elems.size());
            }
        }
    }
    return elems;
}

namespace {

std::vector<int> family_degrees(Family fam, int n) {
    std::vector<int> deg;
    switch (fam) {
        case Family::A:
            for (int i = 2; i <= n + 1; ++i) deg.push_back(i);
            break;
        case Family::GL:
            for (int i = 1; i <= n; ++i) deg.push_back(i);
            break;
        case Family::B:
        case Family::C:
            for (int i = 1; i <= n; ++i) deg.push_back(2 * i);
            break;
        case Family::D:
            for (int i = 1; i < n; ++i) deg.push_back(2 * i);
            deg.push_back(n);
            break;
        case Family::G: deg = {2, 6}; break;
        case Family::F: deg = {2, 6, 8, 12}; break;
        case Family::E:
            if (n == 6) deg = {2, 5, 6, 8, 9, 12};
            else if (n == 7) deg = {2, 6, 8, 10, 12, 14, 18};
            else deg = {2, 8, 12, 14, 18, 20, 24, 30};
            break;
        case Family::Torus: break;
    }
    std::sort(deg.begin(), deg.end());
    return deg;
}

int factor_builtin_central(const FactorInfo& f) { return f.family == Family::GL ? 1 : 0; }

}  // namespace

std::vector<int> fundamental_degrees(const BasedRootDatum& d) {
    if (d.factors.size() > 1)
        throw ValidationError("fundamental_degrees expects an irreducible datum or torus");
    std::vector<int> deg;
    int used_central = 0;
    if (!d.factors.empty()) {
        deg = family_degrees(d.factors[0].family, d.factors[0].family_rank);
        used_central = factor_builtin_central(d.factors[0]);
    }
    for (int i = used_central; i < d.central_rank; ++i) deg.push_back(1);
    std::sort(deg.begin(), deg.end());
    return deg;
}

DiagramAutomorphism trivial_automorphism(const BasedRootDatum& d) {
    DiagramAutomorphism a;
    a.lattice_matrix = IntMatrix::identity(d.rank);
    a.simple_perm.resize(d.simple_indices.size());
    std::iota(a.simple_perm.begin(), a.simple_perm.end(), 0);
    a.order = 1;
    return a;
}

namespace {

// Standard twist of a single factor as a block on its own coordinates.
SmallMat factor_twist_block(const FactorInfo& f, int order) {
    int n = f.lat_rank;
    SmallMat m(n);
    if (order == 2) {
        switch (f.family) {
            case Family::GL:
                for (int c = 0; c < n; ++c) m.at(n - 1 - c, c) = -1;
                return m;
            case Family::A:
                if (f.cartan_basis) {
                    for (int c = 0; c < n; ++c) m.at(n - 1 - c, c) = 1;
                    return m;
                }
                // SL realization on Z^N/Z(1,..,1), N = n+1: e_i -> -e_{N+1-i}.
                // Basis vector b_1 maps to -e_N = b_1 + ... + b_{N-1}; for c >= 2,
                // b_c maps to -b_{N+1-c}.
                for (int r = 0; r < n; ++r) m.at(r, 0) = 1;
                for (int c = 1; c < n; ++c) m.at(n - c, c) = -1;
                return m;
            case Family::D:
                if (f.cartan_basis) {
                    m = SmallMat::identity(n);
                    // swap the two fork nodes (last two simple roots)
                    m.at(n - 1, n - 1) = m.at(n - 2, n - 2) = 0;
                    m.at(n - 1, n - 2) = m.at(n - 2, n - 1) = 1;
                    return m;
                }
                m = SmallMat::identity(n);
                m.at(n - 1, n - 1) = -1;
                return m;
            case Family::E:
                if (f.family_rank == 6 && f.cartan_basis) {
                    // Bourbaki: 1<->6, 3<->5, fix 2 and 4 (0-based: 0<->5, 2<->4).
                    m.at(5, 0) = m.at(0, 5) = 1;
                    m.at(4, 2) = m.at(2, 4) = 1;
                    m.at(1, 1) = m.at(3, 3) = 1;
                    return m;
                }
                break;
            default: break;
        }
    }
    if (order == 3 && f.family == Family::D && f.family_rank == 4 && f.cartan_basis) {
        // alpha1 -> alpha3 -> alpha4 -> alpha1, alpha2 fixed.
        m.at(2, 0) = 1;
        m.at(3, 2) = 1;
        m.at(0, 3) = 1;
        m.at(1, 1) = 1;
        return m;
    }
    throw UnsupportedTypeError(f.label + "^" + std::to_string(order));
}

}  // namespace

DiagramAutomorphism standard_twist(const BasedRootDatum& d, int order) {
    if (order == 1) return trivial_automorphism(d);
    SmallMat block(d.rank);
    if (d.factors.size() == 1 && d.factors[0].lat_rank == d.rank) {
        block = factor_twist_block(d.factors[0], order);
    } else if (d.factors.empty() && d.rank == 1 && order == 2) {
        block.at(0, 0) = -1;  // inversion on a rank-1 torus
    } else {
        throw UnsupportedTypeError(d.label + "^" + std::to_string(order));
    }
    return make_automorphism(d, block.to_int_matrix());
}

DiagramAutomorphism product_twist(const BasedRootDatum& product,
                                  const std::vector<DiagramAutomorphism>& parts) {
    int total = 0;
    for (const auto& p : parts) total += p.lattice_matrix.rows();
    if (total != product.rank) throw ValidationError("product twist rank mismatch");
    IntMatrix m(product.rank, product.rank);
    int off = 0;
    for (const auto& p : parts) {
        int n = p.lattice_matrix.rows();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(off + i, off + j) = p.lattice_matrix.at(i, j);
        off += n;
    }
    return make_automorphism(product, m);
}

DiagramAutomorphism make_automorphism(const BasedRootDatum& d, const IntMatrix& m) {
    if (m.rows() != d.rank || m.cols() != d.rank)
        throw ValidationError("automorphism matrix has wrong size");
    SmallMat sm = SmallMat::from_int_matrix(m);
    unsigned long order = sm.order();
    if (order == 0) throw BadActionError("automorphism is not of finite order");
    std::set<Vec> root_set(d.roots.begin(), d.roots.end());
    for (const auto& r : d.roots)
        if (!root_set.count(sm.apply(r)))
            throw BadActionError("matrix does not permute the root set");
    std::vector<int> perm(d.simple_indices.size());
    std::map<Vec, int> simple_pos;
    for (size_t s = 0; s < d.simple_indices.size(); ++s)
        simple_pos[d.roots[d.simple_indices[s]]] = static_cast<int>(s);
    for (size_t s = 0; s < d.simple_indices.size(); ++s) {
        Vec image = sm.apply(d.roots[d.simple_indices[s]]);
        auto it = simple_pos.find(image);
        if (it == simple_pos.end())
            throw BadActionError("matrix does not map the base to itself");
        perm[s] = it->second;
    }
    DiagramAutomorphism a;
    a.lattice_matrix = m;
    a.simple_perm = std::move(perm);
    a.order = order;
    return a;
}

namespace {

IntPoly poly_t_pow_minus(int n, int sign) {
    // T^n - sign
    std::vector<Int> c(n + 1, Int(0));
    c[0] = -sign;
    c[n] = 1;
    return IntPoly(std::move(c));
}

bool block_equals(const IntMatrix& whole, const SmallMat& block, int off) {
    for (int i = 0; i < block.n; ++i)
        for (int j = 0; j < block.n; ++j)
            if (whole.at(off + i, off + j) != block.at(i, j)) return false;
    return true;
}

bool offblock_is_zero(const IntMatrix& whole, int off, int n) {
    for (int i = 0; i < whole.rows(); ++i)
        for (int j = 0; j < whole.cols(); ++j) {
            bool row_in = i >= off && i < off + n;
            bool col_in = j >= off && j < off + n;
            if (row_in != col_in && whole.at(i, j) != 0) return false;
        }
    return true;
}

// Closed-form chi for one factor under the restriction of beta; empty optional
// when the case is not recognized.
bool factor_chi_table(const FactorInfo& f, const IntMatrix& beta, IntPoly& out) {
    if (!offblock_is_zero(beta, f.lat_offset, f.lat_rank)) return false;
    SmallMat id = SmallMat::identity(f.lat_rank);
    if (block_equals(beta, id, f.lat_offset)) {
        out = IntPoly::constant(1);
        for (int deg : family_degrees(f.family, f.family_rank))
            out = out * poly_t_pow_minus(deg, 1);
        return true;
    }
    auto matches_std = [&](int order) {
        try {
            return block_equals(beta, factor_twist_block(f, order), f.lat_offset);
        } catch (const UnsupportedTypeError&) {
            return false;
        }
    };
    if ((f.family == Family::GL || f.family == Family::A) && matches_std(2)) {
        int n = f.family == Family::GL ? f.family_rank : f.family_rank + 1;
        int d0 = f.family == Family::GL ? 1 : 2;
        out = IntPoly::constant(1);
        for (int deg = d0; deg <= n; ++deg)
            out = out * poly_t_pow_minus(deg, deg % 2 == 0 ? 1 : -1);
        return true;
    }
    if (f.family == Family::D && matches_std(2)) {
        int n = f.family_rank;
        out = poly_t_pow_minus(n, -1);  // T^n + 1
        for (int deg = 1; deg < n; ++deg) out = out * poly_t_pow_minus(2 * deg, 1);
        return true;
    }
    if (f.family == Family::D && f.family_rank == 4 && f.cartan_basis && matches_std(3)) {
        IntPoly corr({1, 0, 0, 0, 1, 0, 0, 0, 1});  // T^8 + T^4 + 1
        out = poly_t_pow_minus(2, 1) * poly_t_pow_minus(6, 1) * corr;
        return true;
    }
    return false;
}

bool chi_table_recognizes(const BasedRootDatum& d, const DiagramAutomorphism& beta,
                          IntPoly& out) {
    std::vector<bool> covered(d.rank, false);
    IntPoly acc = IntPoly::constant(1);
    for (const auto& f : d.factors) {
        IntPoly part;
        if (!factor_chi_table(f, beta.lattice_matrix, part)) return false;
        acc = acc * part;
        for (int j = 0; j < f.lat_rank; ++j) covered[f.lat_offset + j] = true;
    }
    // Remaining coordinates form the extra torus part; beta must not mix them
    // with factor blocks (already implied by the off-block checks above).
    std::vector<int> torus_coords;
    for (int j = 0; j < d.rank; ++j)
        if (!covered[j]) torus_coords.push_back(j);
    if (!torus_coords.empty()) {
        int t = static_cast<int>(torus_coords.size());
        IntMatrix sub(t, t);
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < t; ++j) sub.at(i, j) = beta.lattice_matrix.at(torus_coords[i], torus_coords[j]);
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < d.rank; ++j) {
                bool col_in_torus =
                    std::find(torus_coords.begin(), torus_coords.end(), j) != torus_coords.end();
                if (!col_in_torus && beta.lattice_matrix.at(torus_coords[i], j) != 0) return false;
            }
        acc = acc * sub.char_poly().primitive_part();
    }
    out = acc;
    return true;
}

IntPoly chi_oracle(const BasedRootDatum& d, const DiagramAutomorphism& beta,
                   unsigned long weyl_bound) {
    std::vector<SmallMat> elems = weyl_elements(d, weyl_bound);
    SmallMat binv =
        SmallMat::from_int_matrix(beta.lattice_matrix).inverse_of_finite_order();
    std::vector<IntPoly> cps(elems.size());
    long count = static_cast<long>(elems.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < count; ++i) {
        cps[i] = (elems[i] * binv).to_int_matrix().char_poly();
    }
    // Canonical ordering before the lcm fold keeps the result deterministic
    // under any parallel schedule.
    std::set<std::vector<Int>> distinct;
    for (const auto& p : cps) distinct.insert(p.coeffs());
    std::vector<IntPoly> unique_polys;
    unique_polys.reserve(distinct.size());
    for (const auto& c : distinct) unique_polys.emplace_back(c);
    return exactalg::primitive_lcm(unique_polys);
}

}  // namespace

bool is_triality(const BasedRootDatum& d, const DiagramAutomorphism& beta) {
    if (d.factors.size() != 1 || d.factors[0].lat_rank != d.rank) return false;
    const FactorInfo& f = d.factors[0];
    return f.family == Family::D && f.family_rank == 4 && beta.order % 3 == 0;
}

IntPoly chi_twisted(const BasedRootDatum& d, const DiagramAutomorphism& beta,
                    ChiMethod method, unsigned long weyl_bound) {
    IntPoly table;
    bool have_table = chi_table_recognizes(d, beta, table);
    switch (method) {
        case ChiMethod::Table:
            if (!have_table)
                throw ValidationError("no closed-form table for this (type, twist)");
            return table;
        case ChiMethod::Oracle:
            return chi_oracle(d, beta, weyl_bound);
        case ChiMethod::Auto: {
            if (!have_table) return chi_oracle(d, beta, weyl_bound);
            if (d.weyl_order_formula() <= 100000) {
                IntPoly oracle = chi_oracle(d, beta, weyl_bound);
                if (oracle != table)
                    throw std::logic_error("chi table/oracle disagreement for " + d.label);
            }
            return table;
        }
    }
    throw std::logic_error("unreachable");
}

int twisted_coxeter(const IntPoly& chi) {
    if (chi.degree() <= 0) throw DegenerateChiError();
    auto fact = exactalg::cyclotomic_factorization(chi);
    if (fact.multiplicities.empty()) throw DegenerateChiError();
    return fact.multiplicities.rbegin()->first;
}

IntPoly chi_star_from_chi(const IntPoly& chi) {
    int h = twisted_coxeter(chi);
    IntPoly out = IntPoly::constant(1);
    for (int n = 1; n <= h; ++n) out = out * exactalg::cyclotomic(n);
    return out;
}

IntPoly chi_star(const BasedRootDatum& d, const DiagramAutomorphism& beta) {
    return chi_star_from_chi(chi_twisted(d, beta));
}

IntPoly chi_prime(const BasedRootDatum& d, const DiagramAutomorphism& beta) {
    if (is_triality(d, beta)) return poly_t_pow_minus(12, 1);
    return chi_twisted(d, beta);
}

}  // namespace langparams::rootdata
