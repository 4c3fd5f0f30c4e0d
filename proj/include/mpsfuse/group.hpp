// Copyright 2026 The mpsfuse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MPSFUSE_GROUP_HPP
#define MPSFUSE_GROUP_HPP

// Finite abelian groups G = Z_{n1} × … × Z_{nm}, their linear characters,
// U(1)-valued 3-cocycles (validation and exact coboundary solving) and the
// operators L(g), 𝒵(χ), u^ω(g), v^ω(g,h), r^ω(g) built from them.

#include "mpsfuse/num.hpp"

#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mpsfuse {

/// Elements are indexed lexicographically by their residue tuples (first
/// factor most significant); index 0 is the identity.
struct GroupSpec {
    std::vector<int> factors;

    void validate() const {
        if (factors.empty()) {
            throw InputError("GroupSpec: at least one cyclic factor is required");
        }
        long long n = 1;
        for (int f : factors) {
            if (f < 1) {
                throw InputError("GroupSpec: cyclic orders must be positive");
            }
            n *= f;
            if (n > 4096) {
                throw CapExceeded("GroupSpec: group order exceeds 4096");
            }
        }
    }
    int order() const {
        int n = 1;
        for (int f : factors) {
            n *= f;
        }
        return n;
    }
    /// Least common multiple of the factors.
    int exponent() const {
        int e = 1;
        for (int f : factors) {
            e = std::lcm(e, f);
        }
        return e;
    }
    std::vector<int> element(int idx) const {
        std::vector<int> t(factors.size());
        for (std::size_t k = factors.size(); k-- > 0;) {
            t[k] = idx % factors[k];
            idx /= factors[k];
        }
        return t;
    }
    int index(const std::vector<int> &t) const {
        if (t.size() != factors.size()) {
            throw InputError("GroupSpec: element tuple has the wrong length");
        }
        int idx = 0;
        for (std::size_t k = 0; k < factors.size(); ++k) {
            idx = idx * factors[k] + ((t[k] % factors[k]) + factors[k]) % factors[k];
        }
        return idx;
    }
    int mul(int a, int b) const {
        std::vector<int> x = element(a);
        std::vector<int> y = element(b);
        for (std::size_t k = 0; k < x.size(); ++k) {
            x[k] = (x[k] + y[k]) % factors[k];
        }
        return index(x);
    }
    int inv(int a) const {
        std::vector<int> x = element(a);
        for (std::size_t k = 0; k < x.size(); ++k) {
            x[k] = (factors[k] - x[k]) % factors[k];
        }
        return index(x);
    }
    static constexpr int identity() {
        return 0;
    }
    std::string element_name(int idx) const {
        std::vector<int> t = element(idx);
        std::ostringstream os;
        os << "(";
        for (std::size_t k = 0; k < t.size(); ++k) {
            os << (k ? "," : "") << t[k];
        }
        os << ")";
        return os.str();
    }
};

inline GroupSpec cyclic_group(int n) {
    GroupSpec g{{n}};
    g.validate();
    return g;
}

/// Exhaustive check of the group axioms (closure is structural).
inline bool check_group_axioms(const GroupSpec &g) {
    g.validate();
    const int n = g.order();
    if (n > 64) {
        throw CapExceeded("check_group_axioms: exhaustive check limited to |G| <= 64");
    }
    for (int a = 0; a < n; ++a) {
        if (g.mul(a, GroupSpec::identity()) != a || g.mul(a, g.inv(a)) != GroupSpec::identity()) {
            return false;
        }
        for (int b = 0; b < n; ++b) {
            int ab = g.mul(a, b);
            if (ab < 0 || ab >= n || ab != g.mul(b, a)) {
                return false;
            }
            for (int c = 0; c < n; ++c) {
                if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Linear character χ_k(g) = exp(2πi Σ_m k_m g_m / n_m), labelled by a
/// group element k (so Ĝ ≅ G with the same indexing).
struct Character {
    GroupSpec group;
    std::vector<int> k;

    cplx operator()(int el) const {
        std::vector<int> x = group.element(el);
        double ph = 0;
        for (std::size_t m = 0; m < x.size(); ++m) {
            ph += static_cast<double>(k[m]) * x[m] / group.factors[m];
        }
        return std::polar(1.0, 2 * kPi * ph);
    }
};

inline Character character(const GroupSpec &g, int label) {
    return Character{g, g.element(label)};
}

inline bool check_character(const Character &chi, double tol = 1e-12) {
    const int n = chi.group.order();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (std::abs(chi(a) * chi(b) - chi(chi.group.mul(a, b))) > tol) {
                return false;
            }
        }
    }
    return true;
}

/// L(g) = Σ_h |gh⟩⟨h|.
inline CMatrix build_L(const GroupSpec &G, int g) {
    const int n = G.order();
    CMatrix m = CMatrix::Zero(n, n);
    for (int h = 0; h < n; ++h) {
        m(G.mul(g, h), h) = 1.0;
    }
    return m;
}

/// 𝒵(χ) = Σ_g χ(g) |g⟩⟨g|.
inline CMatrix build_Z_char(const Character &chi) {
    const int n = chi.group.order();
    CMatrix m = CMatrix::Zero(n, n);
    for (int g = 0; g < n; ++g) {
        m(g, g) = chi(g);
    }
    return m;
}

/// |+_G⟩ = Σ_g |g⟩ / √|G|.
inline CVector plus_G(const GroupSpec &G) {
    const int n = G.order();
    return CVector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
}

/// |Ω_G⟩ = Σ_g |g g⟩ / √|G|.
inline CVector omega_G(const GroupSpec &G) {
    const int n = G.order();
    CVector v = CVector::Zero(static_cast<Eigen::Index>(n) * n);
    for (int g = 0; g < n; ++g) {
        v(static_cast<Eigen::Index>(g) * n + g) = 1.0 / std::sqrt(static_cast<double>(n));
    }
    return v;
}

// ----- Cocycles ----------------------------------------------------------------

struct Cocycle {
    GroupSpec group;
    /// ω(g, h, k) at index (g·n + h)·n + k.
    std::vector<cplx> table;
    /// Declared linearity in the first argument (checked by validate_cocycle).
    bool declared_linear = false;

    cplx operator()(int g, int h, int k) const {
        const auto n = static_cast<std::size_t>(group.order());
        return table[(static_cast<std::size_t>(g) * n + static_cast<std::size_t>(h)) * n + static_cast<std::size_t>(k)];
    }
    void check_shape() const {
        group.validate();
        const auto n = static_cast<std::size_t>(group.order());
        if (table.size() != n * n * n) {
            throw InputError("Cocycle: table must have |G|^3 entries");
        }
    }
};

inline Cocycle trivial_cocycle(const GroupSpec &G) {
    G.validate();
    const auto n = static_cast<std::size_t>(G.order());
    return Cocycle{G, std::vector<cplx>(n * n * n, 1.0), true};
}

/// Cocycle with ω(g,h,k) = exp(2πi·phase(g,h,k)) for phase tables given as
/// exact rationals num/den (entries not listed are 0).
struct PhaseEntry {
    int g = 0;
    int h = 0;
    int k = 0;
    long long num = 0;
    long long den = 1;
};

inline Cocycle cocycle_from_phases(const GroupSpec &G, const std::vector<PhaseEntry> &entries, bool declared_linear) {
    Cocycle c = trivial_cocycle(G);
    c.declared_linear = declared_linear;
    const int n = G.order();
    for (const auto &e : entries) {
        if (e.g < 0 || e.g >= n || e.h < 0 || e.h >= n || e.k < 0 || e.k >= n) {
            throw InputError("cocycle entry references an element outside the group");
        }
        if (e.den <= 0) {
            throw InputError("cocycle phase denominators must be positive");
        }
        double ph = 2 * kPi * static_cast<double>(e.num % e.den) / static_cast<double>(e.den);
        c.table[(static_cast<std::size_t>(e.g) * static_cast<std::size_t>(n) + static_cast<std::size_t>(e.h)) *
                    static_cast<std::size_t>(n) +
                static_cast<std::size_t>(e.k)] = std::polar(1.0, ph);
    }
    return c;
}

/// Type-I cocycle on Z_N: ω(a,b,c) = exp(2πi p a ⌊(b+c)/N⌋ / N), linear in a.
/// For N = 2, p = 1 this is ω(x,x,x) = −1 and 1 elsewhere.
inline Cocycle type_one_cocycle(int N, int p) {
    GroupSpec G = cyclic_group(N);
    Cocycle c = trivial_cocycle(G);
    for (int a = 0; a < N; ++a) {
        for (int b = 0; b < N; ++b) {
            for (int cc = 0; cc < N; ++cc) {
                int carry = (b + cc) >= N ? 1 : 0;
                c.table[(static_cast<std::size_t>(a) * static_cast<std::size_t>(N) + static_cast<std::size_t>(b)) *
                            static_cast<std::size_t>(N) +
                        static_cast<std::size_t>(cc)] =
                    std::polar(1.0, 2 * kPi * static_cast<double>(p) * a * carry / N);
            }
        }
    }
    return c;
}

/// (δβ)(g,h,k) = β(h,k) β(g,hk) / (β(gh,k) β(g,h)) for a 2-cochain β
/// indexed g·n + h.
inline Cocycle coboundary_of(const GroupSpec &G, const std::vector<cplx> &beta) {
    const int n = G.order();
    if (beta.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw InputError("coboundary_of: beta must have |G|^2 entries");
    }
    auto b = [&](int x, int y) { return beta[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + static_cast<std::size_t>(y)]; };
    Cocycle c = trivial_cocycle(G);
    c.declared_linear = false;
    for (int g = 0; g < n; ++g) {
        for (int h = 0; h < n; ++h) {
            for (int k = 0; k < n; ++k) {
                c.table[(static_cast<std::size_t>(g) * static_cast<std::size_t>(n) + static_cast<std::size_t>(h)) *
                            static_cast<std::size_t>(n) +
                        static_cast<std::size_t>(k)] =
                    b(h, k) * b(g, G.mul(h, k)) / (b(G.mul(g, h), k) * b(g, h));
            }
        }
    }
    return c;
}

struct CocycleReport {
    bool unit_modulus = false;
    bool is_cocycle = false;
    bool is_linear_first_arg = false;
    bool declared_linear = false;
    /// Human-readable description of the first violation found, if any.
    std::string violation;
};

/// Exhaustive check of |ω| = 1, the cocycle condition
/// ω(g,h,k) ω(g,hk,ℓ) ω(h,k,ℓ) = ω(gh,k,ℓ) ω(g,h,kℓ), and linearity in the
/// first argument.
inline CocycleReport validate_cocycle(const Cocycle &c) {
    c.check_shape();
    const GroupSpec &G = c.group;
    const int n = G.order();
    if (n > 64) {
        throw CapExceeded("validate_cocycle: exhaustive check limited to |G| <= 64");
    }
    CocycleReport r;
    r.declared_linear = c.declared_linear;
    r.unit_modulus = true;
    for (int g = 0; g < n && r.unit_modulus; ++g) {
        for (int h = 0; h < n && r.unit_modulus; ++h) {
            for (int k = 0; k < n; ++k) {
                if (std::abs(std::abs(c(g, h, k)) - 1.0) > 1e-12) {
                    r.unit_modulus = false;
                    r.violation = "|omega" + G.element_name(g) + G.element_name(h) + G.element_name(k) + "| != 1";
                    break;
                }
            }
        }
    }
    r.is_cocycle = r.unit_modulus;
    for (int g = 0; g < n && r.is_cocycle; ++g) {
        for (int h = 0; h < n && r.is_cocycle; ++h) {
            for (int k = 0; k < n && r.is_cocycle; ++k) {
                for (int l = 0; l < n; ++l) {
                    cplx lhs = c(g, h, k) * c(g, G.mul(h, k), l) * c(h, k, l);
                    cplx rhs = c(G.mul(g, h), k, l) * c(g, h, G.mul(k, l));
                    if (std::abs(lhs - rhs) > 1e-10) {
                        r.is_cocycle = false;
                        if (r.violation.empty()) {
                            r.violation = "cocycle condition fails at (g,h,k,l) = " + G.element_name(g) +
                                          G.element_name(h) + G.element_name(k) + G.element_name(l);
                        }
                        break;
                    }
                }
            }
        }
    }
    r.is_linear_first_arg = true;
    for (int g = 0; g < n && r.is_linear_first_arg; ++g) {
        for (int g2 = 0; g2 < n && r.is_linear_first_arg; ++g2) {
            for (int h = 0; h < n && r.is_linear_first_arg; ++h) {
                for (int k = 0; k < n; ++k) {
                    if (std::abs(c(g, h, k) * c(g2, h, k) - c(G.mul(g, g2), h, k)) > 1e-10) {
                        r.is_linear_first_arg = false;
                        break;
                    }
                }
            }
        }
    }
    return r;
}

/// Throws InputError unless the cocycle validates and is linear in its
/// first argument (the standing assumption of the protocol builders).
inline void require_linear_cocycle(const Cocycle &c) {
    CocycleReport r = validate_cocycle(c);
    if (!r.is_cocycle) {
        throw InputError("not a 3-cocycle: " + r.violation);
    }
    if (!r.is_linear_first_arg) {
        throw InputError("cocycle is not linear in its first argument");
    }
}

namespace detail {

inline long long mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

/// Extended gcd on nonnegative integers: returns g = gcd(a,b) and x, y with
/// a x + b y = g.
inline long long ext_gcd(long long a, long long b, long long &x, long long &y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long long x1 = 0;
    long long y1 = 0;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

/// Solves A x ≡ rhs (mod K) by diagonalizing A with unimodular row and
/// column operations (Smith-style elimination over Z_K). Returns nullopt if
/// the system is inconsistent.
inline std::optional<std::vector<long long>> solve_mod(std::vector<std::vector<long long>> A, std::vector<long long> rhs,
                                                       long long K) {
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : 0;
    for (auto &row : A) {
        for (auto &x : row) {
            x = mod(x, K);
        }
    }
    for (auto &x : rhs) {
        x = mod(x, K);
    }
    // Column transform V (n×n): x = V y.
    std::vector<std::vector<long long>> V(n, std::vector<long long>(n, 0));
    for (std::size_t k = 0; k < n; ++k) {
        V[k][k] = 1;
    }
    auto gcdK = [&](long long a) { return std::gcd(a, K); };
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        // Pivot: entry with the smallest gcd with K among the remaining block.
        std::size_t pr = m;
        std::size_t pc = n;
        long long best = K + 1;
        for (std::size_t r = t; r < m; ++r) {
            for (std::size_t c = t; c < n; ++c) {
                if (A[r][c] != 0 && gcdK(A[r][c]) < best) {
                    best = gcdK(A[r][c]);
                    pr = r;
                    pc = c;
                }
            }
        }
        if (pr == m) {
            break;
        }
        std::swap(A[t], A[pr]);
        std::swap(rhs[t], rhs[pr]);
        if (pc != t) {
            for (std::size_t r = 0; r < m; ++r) {
                std::swap(A[r][t], A[r][pc]);
            }
            for (std::size_t r = 0; r < n; ++r) {
                std::swap(V[r][t], V[r][pc]);
            }
        }
        bool dirty = true;
        while (dirty) {
            dirty = false;
            // Clear column t below the pivot with 2×2 unimodular row steps.
            for (std::size_t r = t + 1; r < m; ++r) {
                if (A[r][t] == 0) {
                    continue;
                }
                long long p = A[t][t];
                long long a = A[r][t];
                long long x = 0;
                long long y = 0;
                long long g = ext_gcd(p, a, x, y);
                long long pg = p / g;
                long long ag = a / g;
                for (std::size_t c = t; c < n; ++c) {
                    long long u = A[t][c];
                    long long w = A[r][c];
                    A[t][c] = mod(mod(x, K) * u % K + mod(y, K) * w % K, K);
                    A[r][c] = mod(mod(-ag, K) * u % K + mod(pg, K) * w % K, K);
                }
                long long u = rhs[t];
                long long w = rhs[r];
                rhs[t] = mod(mod(x, K) * u % K + mod(y, K) * w % K, K);
                rhs[r] = mod(mod(-ag, K) * u % K + mod(pg, K) * w % K, K);
            }
            // Clear row t right of the pivot with column steps.
            for (std::size_t c = t + 1; c < n; ++c) {
                if (A[t][c] == 0) {
                    continue;
                }
                long long p = A[t][t];
                long long a = A[t][c];
                long long x = 0;
                long long y = 0;
                long long g = ext_gcd(p, a, x, y);
                long long pg = p / g;
                long long ag = a / g;
                for (std::size_t r = t; r < m; ++r) {
                    long long u = A[r][t];
                    long long w = A[r][c];
                    A[r][t] = mod(mod(x, K) * u % K + mod(y, K) * w % K, K);
                    A[r][c] = mod(mod(-ag, K) * u % K + mod(pg, K) * w % K, K);
                    if (r > t && A[r][t] != 0) {
                        dirty = true;
                    }
                }
                for (std::size_t r = 0; r < n; ++r) {
                    long long u = V[r][t];
                    long long w = V[r][c];
                    V[r][t] = mod(mod(x, K) * u % K + mod(y, K) * w % K, K);
                    V[r][c] = mod(mod(-ag, K) * u % K + mod(pg, K) * w % K, K);
                }
            }
        }
    }
    // Diagonal system s_i y_i ≡ rhs_i.
    std::vector<long long> y(n, 0);
    for (std::size_t i = 0; i < m; ++i) {
        long long s = i < n ? A[i][i] : 0;
        if (i >= t || s == 0) {
            if (rhs[i] != 0) {
                return std::nullopt;
            }
            continue;
        }
        long long g = std::gcd(s, K);
        if (rhs[i] % g != 0) {
            return std::nullopt;
        }
        long long Kg = K / g;
        long long x = 0;
        long long yy = 0;
        ext_gcd(mod(s / g, Kg), Kg, x, yy);
        y[i] = mod((rhs[i] / g) % Kg * mod(x, Kg), Kg);
    }
    std::vector<long long> xs(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        long long acc = 0;
        for (std::size_t c = 0; c < n; ++c) {
            acc = mod(acc + V[r][c] * y[c] % K, K);
        }
        xs[r] = acc;
    }
    return xs;
}

}  // namespace detail

/// Searches a 2-cochain β (|G|² table, index g·n + h) with ω = δβ, exactly:
/// ω is written as exp(2πi w/K) with K = exp(G)²·|G| and the congruences
/// b(h,k) + b(g,hk) − b(gh,k) − b(g,h) ≡ w(g,h,k) (mod K) are solved by
/// elimination over Z_K. Tables that are not K-th roots of unity are rejected.
inline std::optional<std::vector<cplx>> is_coboundary(const Cocycle &c) {
    c.check_shape();
    const GroupSpec &G = c.group;
    const int n = G.order();
    if (n > 16) {
        throw CapExceeded("is_coboundary: exact solving limited to |G| <= 16");
    }
    const long long e = G.exponent();
    const long long K = e * e * n;
    std::vector<long long> w(static_cast<std::size_t>(n) * n * n);
    for (int g = 0; g < n; ++g) {
        for (int h = 0; h < n; ++h) {
            for (int k = 0; k < n; ++k) {
                cplx v = c(g, h, k);
                double ph = std::arg(v) / (2 * kPi) * static_cast<double>(K);
                long long q = std::llround(ph);
                if (std::abs(std::abs(v) - 1) > 1e-9 || std::abs(v - std::polar(1.0, 2 * kPi * static_cast<double>(q) / K)) > 1e-9) {
                    throw InputError("is_coboundary: table entries must be roots of unity of order dividing " +
                                     std::to_string(K));
                }
                w[(static_cast<std::size_t>(g) * n + h) * n + k] = detail::mod(q, K);
            }
        }
    }
    std::vector<std::vector<long long>> A(static_cast<std::size_t>(n) * n * n,
                                          std::vector<long long>(static_cast<std::size_t>(n) * n, 0));
    for (int g = 0; g < n; ++g) {
        for (int h = 0; h < n; ++h) {
            for (int k = 0; k < n; ++k) {
                auto &row = A[(static_cast<std::size_t>(g) * n + h) * n + k];
                row[static_cast<std::size_t>(h) * n + k] += 1;
                row[static_cast<std::size_t>(g) * n + G.mul(h, k)] += 1;
                row[static_cast<std::size_t>(G.mul(g, h)) * n + k] -= 1;
                row[static_cast<std::size_t>(g) * n + h] -= 1;
            }
        }
    }
    auto sol = detail::solve_mod(A, w, K);
    if (!sol) {
        return std::nullopt;
    }
    std::vector<cplx> beta;
    for (long long b : *sol) {
        beta.push_back(std::polar(1.0, 2 * kPi * static_cast<double>(b) / static_cast<double>(K)));
    }
    // Exact verification of δβ = ω.
    Cocycle check = coboundary_of(G, beta);
    for (std::size_t k = 0; k < check.table.size(); ++k) {
        if (std::abs(check.table[k] - c.table[k]) > 1e-9) {
            throw NumericalError("is_coboundary: elimination produced an inconsistent solution");
        }
    }
    return beta;
}

// ----- Cocycle operators --------------------------------------------------------

/// u^ω(g) = Σ_{h,k} ω(g, h, h⁻¹k) |h,k⟩⟨h,k|.
inline CMatrix build_u_omega(const Cocycle &c, int g) {
    const GroupSpec &G = c.group;
    const int n = G.order();
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
    for (int h = 0; h < n; ++h) {
        for (int k = 0; k < n; ++k) {
            m(h * n + k, h * n + k) = c(g, h, G.mul(G.inv(h), k));
        }
    }
    return m;
}

/// v^ω(g,h)|k⟩ = ω(g,h,k)|k⟩.
inline CMatrix build_v_omega(const Cocycle &c, int g, int h) {
    const int n = c.group.order();
    CMatrix m = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        m(k, k) = c(g, h, k);
    }
    return m;
}

/// r^ω(g)|h,k,ℓ⟩ = [ω(ℓ,h,h⁻¹gk) / ω(ℓ,h,h⁻¹k)] |h,k,ℓ⟩.
inline CMatrix build_r_omega(const Cocycle &c, int g) {
    const GroupSpec &G = c.group;
    const int n = G.order();
    const Eigen::Index dim = static_cast<Eigen::Index>(n) * n * n;
    CMatrix m = CMatrix::Zero(dim, dim);
    for (int h = 0; h < n; ++h) {
        for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
                int hi = G.inv(h);
                Eigen::Index idx = (static_cast<Eigen::Index>(h) * n + k) * n + l;
                m(idx, idx) = c(l, h, G.mul(hi, G.mul(g, k))) / c(l, h, G.mul(hi, k));
            }
        }
    }
    return m;
}

}  // namespace mpsfuse

#endif  // MPSFUSE_GROUP_HPP
