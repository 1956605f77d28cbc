#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "k3fib/errors.hpp"

// Exact integer lattices presented by labeled symmetric Gram matrices,
// with determinants, direct sums and discriminant groups computed over
// arbitrary-size integers.

namespace k3fib {

using Int = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<Int>>;

struct Lattice {
    std::string label;
    IntMatrix gram;

    int rank() const { return static_cast<int>(gram.size()); }
};

namespace detail {

inline void check_symmetric(const IntMatrix& g, const std::string& label) {
    const size_t r = g.size();
    for (size_t i = 0; i < r; ++i) {
        if (g[i].size() != r)
            fail(errc::invalid_argument, "lattice '" + label + "': Gram matrix not square");
        for (size_t j = 0; j < i; ++j)
            if (g[i][j] != g[j][i])
                fail(errc::invalid_argument, "lattice '" + label + "': Gram matrix not symmetric");
    }
}

}  // namespace detail

inline Lattice make_lattice(std::string label, IntMatrix gram) {
    detail::check_symmetric(gram, label);
    return Lattice{std::move(label), std::move(gram)};
}

// Bareiss fraction-free elimination; exact over Int.
inline Int determinant(const Lattice& L) {
    IntMatrix a = L.gram;
    const int n = L.rank();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int pivot = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) return 0;
            std::swap(a[k], a[pivot]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline Lattice hyperbolic_plane() {
    return make_lattice("H", {{0, 1}, {1, 0}});
}

// Negative definite E8 root lattice: chain 0-1-2-3-4-5-6 with node 7
// attached to node 4, Cartan matrix negated.
inline Lattice e8_lattice() {
    IntMatrix g(8, std::vector<Int>(8, 0));
    auto join = [&](int i, int j) { g[i][j] = g[j][i] = 1; };
    for (int i = 0; i < 8; ++i) g[i][i] = -2;
    for (int i = 0; i + 1 < 7; ++i) join(i, i + 1);
    join(4, 7);
    return make_lattice("E8", std::move(g));
}

inline Lattice span_lattice(const Int& m) {
    if (m == 0) fail(errc::invalid_span, "span_lattice: <m> requires m != 0");
    return make_lattice("<" + m.str() + ">", {{m}});
}

inline Lattice direct_sum(const Lattice& a, const Lattice& b) {
    const int ra = a.rank(), rb = b.rank();
    IntMatrix g(ra + rb, std::vector<Int>(ra + rb, 0));
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < ra; ++j) g[i][j] = a.gram[i][j];
    for (int i = 0; i < rb; ++i)
        for (int j = 0; j < rb; ++j) g[ra + i][ra + j] = b.gram[i][j];
    return make_lattice(a.label + " + " + b.label, std::move(g));
}

// M_n = H + E8 + E8 + <-2n>, the rank 19 polarizing lattice.
inline Lattice mn_lattice(int n) {
    Lattice L = direct_sum(direct_sum(hyperbolic_plane(), e8_lattice()),
                           direct_sum(e8_lattice(), span_lattice(Int(-2) * n)));
    L.label = "M_" + std::to_string(n);
    return L;
}

// Orthogonal complement of M_n in the K3 lattice: H + <2n>, rank 3, in
// the basis (f, e, g) with e the <2n> generator.
inline Lattice mn_perp(int n) {
    if (n < 1) fail(errc::invalid_argument, "mn_perp: n must be >= 1");
    Int t = Int(2) * n;
    return make_lattice("M_" + std::to_string(n) + "_perp (f,e,g)",
                        {{0, 0, 1}, {0, t, 0}, {1, 0, 0}});
}

struct DiscriminantGroup {
    // Invariant factors > 1 in ascending order, each dividing the next.
    std::vector<Int> invariant_factors;

    Int order() const {
        Int o = 1;
        for (const Int& f : invariant_factors) o *= f;
        return o;
    }
    bool trivial() const { return invariant_factors.empty(); }
};

namespace detail {

// Smith normal form diagonal of an integer matrix (row/column reduction
// over Z, no modular shortcuts).
inline std::vector<Int> smith_diagonal(IntMatrix a) {
    using std::swap;
    const int n = static_cast<int>(a.size());
    std::vector<Int> diag;
    int t = 0;
    while (t < n) {
        // find a nonzero pivot in the remaining block
        int pi = -1, pj = -1;
        for (int i = t; i < n && pi < 0; ++i)
            for (int j = t; j < n; ++j)
                if (a[i][j] != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        if (pi != t) swap(a[pi], a[t]);
        if (pj != t)
            for (int i = 0; i < n; ++i) swap(a[i][pj], a[i][t]);

        bool clean = false;
        while (!clean) {
            // clear column t
            for (int i = t + 1; i < n; ++i) {
                while (a[i][t] != 0) {
                    if (abs(a[i][t]) < abs(a[t][t])) swap(a[i], a[t]);
                    const Int q = a[i][t] / a[t][t];
                    for (int j = t; j < n; ++j) a[i][j] -= q * a[t][j];
                }
            }
            // clear row t
            for (int j = t + 1; j < n; ++j) {
                while (a[t][j] != 0) {
                    if (abs(a[t][j]) < abs(a[t][t]))
                        for (int i = t; i < n; ++i) swap(a[i][j], a[i][t]);
                    const Int q = a[t][j] / a[t][t];
                    for (int i = t; i < n; ++i) a[i][j] -= q * a[i][t];
                }
            }
            clean = true;
            for (int i = t + 1; i < n && clean; ++i)
                if (a[i][t] != 0) clean = false;
        }
        // enforce divisibility: pivot must divide the remaining block
        bool restart = false;
        for (int i = t + 1; i < n && !restart; ++i)
            for (int j = t + 1; j < n && !restart; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    for (int jj = t; jj < n; ++jj) a[t][jj] += a[i][jj];
                    restart = true;
                }
        if (restart) continue;
        diag.push_back(abs(a[t][t]));
        ++t;
    }
    return diag;
}

}  // namespace detail

// Invariant factors of the cokernel Z^r / (gram Z^r).
inline DiscriminantGroup discriminant_group(const Lattice& L) {
    if (determinant(L) == 0)
        fail(errc::degenerate_lattice, "discriminant_group: lattice '" + L.label + "' has det 0");
    std::vector<Int> diag = detail::smith_diagonal(L.gram);
    DiscriminantGroup g;
    for (const Int& d : diag)
        if (d > 1) g.invariant_factors.push_back(d);
    return g;
}

}  // namespace k3fib
