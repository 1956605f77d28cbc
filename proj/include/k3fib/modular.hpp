#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "k3fib/errors.hpp"

// Invariants of the congruence subgroup Gamma_0(n), the modular curve
// X_0(n), and its Fricke quotient X_0(n)+: index, elliptic point and cusp
// counts, genera, form class numbers, Fricke fixed points and the rank of
// H^1 of the pushed-forward rank-3 local system on X_0(n)+.

namespace k3fib {

namespace detail {

inline std::vector<long long> prime_factors(long long n) {
    std::vector<long long> ps;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline long long euler_phi(long long n) {
    long long result = n;
    for (long long p : prime_factors(n)) result = result / p * (p - 1);
    return result;
}

}  // namespace detail

// Index of Gamma_0(n) in PSL_2(Z): n * prod_{p|n} (1 + 1/p).
inline long long gamma0_index(long long n) {
    if (n < 1) fail(errc::invalid_argument, "gamma0_index: n must be >= 1");
    long long mu = n;
    for (long long p : detail::prime_factors(n)) mu = mu / p * (p + 1);
    return mu;
}

// Elliptic point counts (nu_2, nu_3) of X_0(n). nu_2 = 0 when 4 | n, else
// prod over odd p | n of (1 + (-1/p)); nu_3 = 0 when n is even or 9 | n,
// else prod over p | n of (1 + (-3/p)) with the p = 3 factor equal to 1.
inline std::pair<int, int> elliptic_counts(long long n) {
    if (n < 1) fail(errc::invalid_argument, "elliptic_counts: n must be >= 1");
    long long nu2 = 1, nu3 = 1;
    if (n % 4 == 0) nu2 = 0;
    if (n % 2 == 0 || n % 9 == 0) nu3 = 0;
    for (long long p : detail::prime_factors(n)) {
        if (p == 2) continue;
        if (nu2 != 0) nu2 *= 1 + (p % 4 == 1 ? 1 : -1);
        if (nu3 != 0 && p != 3) nu3 *= 1 + (p % 3 == 1 ? 1 : -1);
    }
    return {static_cast<int>(nu2), static_cast<int>(nu3)};
}

// Number of cusps of X_0(n): sum over d | n of phi(gcd(d, n/d)).
inline int cusp_count(long long n) {
    if (n < 1) fail(errc::invalid_argument, "cusp_count: n must be >= 1");
    long long total = 0;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        total += detail::euler_phi(std::gcd(d, n / d));
        if (d != n / d) total += detail::euler_phi(std::gcd(n / d, d));
    }
    return static_cast<int>(total);
}

// Genus of X_0(n): g = 1 + mu/12 - nu2/4 - nu3/3 - nuinf/2.
inline int genus_x0(long long n) {
    const long long mu = gamma0_index(n);
    const auto [nu2, nu3] = elliptic_counts(n);
    const int nuinf = cusp_count(n);
    const long long twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * nuinf;
    if (twelve_g % 12 != 0 || twelve_g < 0)
        fail(errc::internal_inconsistency,
             "genus_x0: formula gives non-integral or negative genus for n = " + std::to_string(n));
    return static_cast<int>(twelve_g / 12);
}

// Class number of primitive reduced binary quadratic forms (a,b,c) of
// discriminant D < 0: b^2 - 4ac = D, |b| <= a <= c, gcd(a,b,c) = 1, with
// b >= 0 whenever |b| = a or a = c.
inline int form_class_number(long long D) {
    if (D >= 0 || ((D % 4 + 4) % 4 != 0 && (D % 4 + 4) % 4 != 1))
        fail(errc::invalid_discriminant,
             "form_class_number: D must be negative and 0 or 1 mod 4, got " + std::to_string(D));
    int count = 0;
    for (long long a = 1; 3 * a * a <= -D; ++a) {
        for (long long b = -a; b <= a; ++b) {
            const long long num = b * b - D;
            if (num % (4 * a) != 0) continue;
            const long long c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (-b == a || a == c)) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            ++count;
        }
    }
    return count;
}

// Total number of fixed points of the Fricke involution on X_0(n). For
// n in {2,3,4} the involution fixes one smooth point plus one orbifold or
// cusp point; for n > 4 only smooth points are fixed and the count is the
// class-number expression h(-4n) [+ h(-n) when n = 3 mod 4].
inline int fricke_fixed_count(long long n) {
    if (n < 2) fail(errc::unsupported_n, "fricke_fixed_count: n must be >= 2");
    if (n <= 4) return 2;
    int f = form_class_number(-4 * n);
    if (n % 4 == 3) f += form_class_number(-n);
    return f;
}

// Number of smooth points of X_0(n) fixed by the Fricke involution.
inline int k_smooth(long long n) {
    if (n < 2) fail(errc::unsupported_n, "k_smooth: n must be >= 2");
    if (n <= 4) return 1;
    return fricke_fixed_count(n);
}

// Genus of the Fricke quotient X_0(n)+ via Riemann-Hurwitz for the
// degree-2 quotient map.
inline int genus_x0_plus(long long n) {
    const int g = genus_x0(n);
    const int f = fricke_fixed_count(n);
    const int num = 2 * g + 2 - f;
    if (num % 4 != 0 || num < 0)
        fail(errc::internal_inconsistency,
             "genus_x0_plus: (2g + 2 - f)/4 is not a non-negative integer for n = " +
                 std::to_string(n));
    return num / 4;
}

// rank H^1(X_0(n)+, i_* V_n^+): zero for n in {2,3,4}, otherwise
// k_n + nu2 + nu3 + nuinf + 6 (g+ - 1).
inline int h1_invariant(long long n) {
    if (n < 2) fail(errc::unsupported_n, "h1_invariant: n must be >= 2");
    if (n <= 4) return 0;
    const auto [nu2, nu3] = elliptic_counts(n);
    return k_smooth(n) + nu2 + nu3 + cusp_count(n) + 6 * (genus_x0_plus(n) - 1);
}

// The fixed-point formula consumes form class numbers of the (possibly
// non-fundamental) discriminants -4n and -n. The literature sometimes
// phrases it through the class number of the field Q(sqrt(-n)); the two
// readings differ whenever -4n or -n is non-fundamental, and only the
// form reading reproduces the h1 census. Both are surfaced for
// comparison.
struct ClassNumberComparison {
    long long n;
    int form_minus_4n;                       // h(-4n)
    std::optional<int> form_minus_n;         // h(-n), used when n = 3 mod 4
    long long field_discriminant;            // fundamental discriminant of Q(sqrt(-n))
    int field_class_number;                  // h(Q(sqrt(-n)))
    int k_smooth_form_reading;               // the value the library uses (n > 4)
    int k_smooth_field_reading;              // what the field reading would give
};

inline ClassNumberComparison class_number_comparison(long long n) {
    if (n < 2) fail(errc::unsupported_n, "class_number_comparison: n must be >= 2");
    long long m = 1;  // squarefree part of n
    long long rest = n;
    for (long long p = 2; p * p <= rest; ++p) {
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        if (e % 2 == 1) m *= p;
    }
    m *= rest;
    ClassNumberComparison c{};
    c.n = n;
    c.form_minus_4n = form_class_number(-4 * n);
    if (n % 4 == 3) c.form_minus_n = form_class_number(-n);
    c.field_discriminant = (m % 4 == 3) ? -m : -4 * m;
    c.field_class_number = form_class_number(c.field_discriminant);
    c.k_smooth_form_reading = c.form_minus_4n + (c.form_minus_n ? *c.form_minus_n : 0);
    c.k_smooth_field_reading = c.field_class_number * (n % 4 == 3 ? 2 : 1);
    return c;
}

enum class ExistenceClass { non_rigid_allowed, rigid_only, no_calabi_yau };

inline const char* existence_class_name(ExistenceClass c) {
    switch (c) {
        case ExistenceClass::non_rigid_allowed: return "NonRigidAllowed";
        case ExistenceClass::rigid_only: return "RigidOnly";
        case ExistenceClass::no_calabi_yau: return "NoCalabiYau";
    }
    return "?";
}

inline ExistenceClass cy_existence_class(long long n) {
    if (n < 2) fail(errc::unsupported_n, "cy_existence_class: n must be >= 2");
    if (genus_x0_plus(n) != 0) return ExistenceClass::no_calabi_yau;
    const int h1 = h1_invariant(n);
    if (h1 == 0) return ExistenceClass::non_rigid_allowed;
    if (h1 == 2) return ExistenceClass::rigid_only;
    return ExistenceClass::no_calabi_yau;
}

struct ModularCurveData {
    long long n;
    long long index;
    int nu2;
    int nu3;
    int nu_inf;
    int genus;
    int fricke_fixed;
    int k_smooth;
    int genus_plus;
    int h1_vplus;
};

inline ModularCurveData modular_curve_data(long long n) {
    if (n < 2) fail(errc::unsupported_n, "modular_curve_data: n must be >= 2");
    ModularCurveData d{};
    d.n = n;
    d.index = gamma0_index(n);
    std::tie(d.nu2, d.nu3) = elliptic_counts(n);
    d.nu_inf = cusp_count(n);
    d.genus = genus_x0(n);
    d.fricke_fixed = fricke_fixed_count(n);
    d.k_smooth = k3fib::k_smooth(n);
    d.genus_plus = genus_x0_plus(n);
    d.h1_vplus = h1_invariant(n);
    if (n > 4 && (d.nu2 % 2 != 0 || d.nu3 % 2 != 0 || d.nu_inf % 2 != 0))
        fail(errc::internal_inconsistency,
             "modular_curve_data: odd elliptic/cusp count for n = " + std::to_string(n));
    return d;
}

}  // namespace k3fib
