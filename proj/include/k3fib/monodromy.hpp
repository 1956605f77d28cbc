#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "k3fib/covers.hpp"
#include "k3fib/errors.hpp"
#include "k3fib/modular.hpp"
#include "k3fib/tables.hpp"

// Rank-3 local systems on the projective line, described through
// conjugacy-class data of their local monodromies: eigenvalue exponents
// for semisimple classes and a single size-3 Jordan block for the
// unipotent/quasi-unipotent ones. Enough to evaluate the H^1 rank formula
//   h^1(B, j_* V) = sum R(p_i) + 2 (g(B) - 1) rank V
// and to track monodromy profiles under ramified pullback.

namespace k3fib {

using Frac = boost::rational<long long>;

inline Frac frac_mod1(Frac x) {
    const long long num = x.numerator(), den = x.denominator();
    long long m = num % den;
    if (m < 0) m += den;
    return Frac(m, den);
}

// Order of a monodromy matrix that never has finite order.
inline constexpr long long infinite_order = std::numeric_limits<long long>::max();

class LocalMonodromyClass {
public:
    enum class Kind { semisimple, full_jordan };

    static LocalMonodromyClass semisimple(Frac e1, Frac e2, Frac e3) {
        LocalMonodromyClass c;
        c.kind_ = Kind::semisimple;
        c.exponents_ = {frac_mod1(e1), frac_mod1(e2), frac_mod1(e3)};
        std::sort(c.exponents_.begin(), c.exponents_.end());
        return c;
    }
    static LocalMonodromyClass full_jordan(Frac eps) {
        eps = frac_mod1(eps);
        if (eps != Frac(0) && eps != Frac(1, 2))
            fail(errc::invalid_argument, "full_jordan: eigenvalue exponent must be 0 or 1/2");
        LocalMonodromyClass c;
        c.kind_ = Kind::full_jordan;
        c.eps_ = eps;
        return c;
    }
    static LocalMonodromyClass identity() { return semisimple(0, 0, 0); }

    Kind kind() const { return kind_; }
    const std::array<Frac, 3>& exponents() const { return exponents_; }
    Frac eps() const { return eps_; }

    int fixed_dim() const {
        if (kind_ == Kind::full_jordan) return eps_ == Frac(0) ? 1 : 0;
        int n = 0;
        for (const Frac& e : exponents_)
            if (e == Frac(0)) ++n;
        return n;
    }
    // R(p) = rank - dim of the local-monodromy-fixed subspace
    int drop() const { return 3 - fixed_dim(); }

    long long order() const {
        if (kind_ == Kind::full_jordan) return infinite_order;
        long long o = 1;
        for (const Frac& e : exponents_) o = std::lcm(o, e.denominator());
        return o;
    }
    bool is_identity() const { return kind_ == Kind::semisimple && drop() == 0; }

    bool operator==(const LocalMonodromyClass& o) const {
        if (kind_ != o.kind_) return false;
        return kind_ == Kind::full_jordan ? eps_ == o.eps_ : exponents_ == o.exponents_;
    }
    bool operator!=(const LocalMonodromyClass& o) const { return !(*this == o); }

    // compact conjugacy-class tag: eigenvalue exponents for semisimple
    // classes ("ss(0,0,1/2)"), Jordan-block eigenvalue otherwise
    std::string describe() const {
        if (kind_ == Kind::full_jordan)
            return eps_ == Frac(0) ? "J3(1)" : "J3(-1)";
        std::string s = "ss(";
        for (int i = 0; i < 3; ++i) {
            if (i) s += ",";
            const Frac& e = exponents_[i];
            s += std::to_string(e.numerator());
            if (e.denominator() != 1) s += "/" + std::to_string(e.denominator());
        }
        return s + ")";
    }

private:
    Kind kind_ = Kind::semisimple;
    std::array<Frac, 3> exponents_{Frac(0), Frac(0), Frac(0)};
    Frac eps_ = Frac(0);
};

// Local monodromy of a degree-e ramified pullback.
inline LocalMonodromyClass class_power(const LocalMonodromyClass& c, long long e) {
    if (e < 1) fail(errc::invalid_argument, "class_power: exponent must be >= 1");
    if (c.kind() == LocalMonodromyClass::Kind::full_jordan)
        return LocalMonodromyClass::full_jordan(Frac(e) * c.eps());
    const auto& x = c.exponents();
    return LocalMonodromyClass::semisimple(Frac(e) * x[0], Frac(e) * x[1], Frac(e) * x[2]);
}

struct MarkedPoint {
    std::string label;
    LocalMonodromyClass cls;
};

struct LocalSystemOnP1 {
    int rank = 3;
    int base_genus = 0;
    std::vector<MarkedPoint> points;  // identity classes are never stored
};

inline int h1_rank(const LocalSystemOnP1& V) {
    if (V.points.empty())
        fail(errc::invalid_argument, "h1_rank: local system carries no marked points");
    int sum = 0;
    for (const auto& p : V.points) sum += p.cls.drop();
    const int h1 = sum + 2 * (V.base_genus - 1) * V.rank;
    if (h1 < 0) fail(errc::negative_rank, "h1_rank: rank formula gave a negative value");
    return h1;
}

// ---------------------------------------------------------------------------
// Symmetric square of a rank-2 weight-one class: rotation by theta maps to
// exponents (2 theta, 0, -2 theta); a parabolic class maps to the
// unipotent full Jordan block.

struct Weight1Class {
    bool parabolic;
    Frac theta;  // ignored when parabolic

    static Weight1Class rotation(Frac theta) { return {false, frac_mod1(theta)}; }
    static Weight1Class parabolic_class() { return {true, Frac(0)}; }
};

inline LocalMonodromyClass sym_square_class(const Weight1Class& c) {
    if (c.parabolic) return LocalMonodromyClass::full_jordan(Frac(0));
    return LocalMonodromyClass::semisimple(Frac(2) * c.theta, Frac(0), -Frac(2) * c.theta);
}

// ---------------------------------------------------------------------------
// The fundamental local systems V_n^+

namespace detail {

inline LocalMonodromyClass fricke_class() {
    return LocalMonodromyClass::semisimple(Frac(0), Frac(0), Frac(1, 2));
}
inline LocalMonodromyClass elliptic2_class() {
    return LocalMonodromyClass::semisimple(Frac(0), Frac(1, 2), Frac(1, 2));
}
inline LocalMonodromyClass elliptic3_class() {
    return LocalMonodromyClass::semisimple(Frac(0), Frac(1, 3), Frac(2, 3));
}
inline LocalMonodromyClass cusp_class() { return LocalMonodromyClass::full_jordan(Frac(0)); }

// Class at the lambda = 0 point for the supported rows: the order-a class
// of the orbifold signature, with the order-2 ties broken as elliptic type
// for n = 5 and Fricke type for n = 11, and the n = 4 width-2 cusp
// carrying the quasi-unipotent block.
inline LocalMonodromyClass zero_point_class(int n) {
    switch (n) {
        case 2: return LocalMonodromyClass::semisimple(Frac(1, 4), Frac(1, 2), Frac(3, 4));
        case 3: return LocalMonodromyClass::semisimple(Frac(1, 3), Frac(1, 2), Frac(2, 3));
        case 4: return LocalMonodromyClass::full_jordan(Frac(1, 2));
        case 5: return elliptic2_class();
        case 6:
        case 8:
        case 9: return cusp_class();
        case 7: return elliptic3_class();
        case 11: return fricke_class();
        default: require_supported_n(n, "zero_point_class"); return cusp_class();
    }
}

}  // namespace detail

// Marked points of V_n^+ on X_0(n)+. For the supported rows the points are
// labelled {0, lambda_1..lambda_q, inf}; for other n >= 2 the marked points
// follow the generic table (k_n Fricke points, nu2/2 order-2 points, nu3/2
// order-3 points, nuinf/2 cusps) with synthetic labels.
inline LocalSystemOnP1 vplus_system(int n) {
    if (n < 2) fail(errc::unsupported_n, "vplus_system: n must be >= 2");
    LocalSystemOnP1 V;
    if (is_supported_n(n)) {
        const OrbifoldSignature& sig = orbifold_signature(n);
        V.points.push_back({"0", detail::zero_point_class(n)});
        for (const std::string& label : sig.lambda_labels)
            V.points.push_back({label, detail::fricke_class()});
        V.points.push_back({"inf", detail::cusp_class()});
        return V;
    }
    if (n <= 4) fail(errc::internal_inconsistency, "vplus_system: unreachable");
    const ModularCurveData md = modular_curve_data(n);
    for (int i = 0; i < md.k_smooth; ++i)
        V.points.push_back({"fricke_" + std::to_string(i + 1), detail::fricke_class()});
    for (int i = 0; i < md.nu2 / 2; ++i)
        V.points.push_back({"e2_" + std::to_string(i + 1), detail::elliptic2_class()});
    for (int i = 0; i < md.nu3 / 2; ++i)
        V.points.push_back({"e3_" + std::to_string(i + 1), detail::elliptic3_class()});
    for (int i = 0; i < md.nu_inf / 2; ++i)
        V.points.push_back({"cusp_" + std::to_string(i + 1), detail::cusp_class()});
    V.base_genus = md.genus_plus;
    return V;
}

// Pullback of V_n^+ along the cover described by a branch datum: one point
// per ramification part, with the local class raised to the part; identity
// classes are dropped and the r extra simple branch points contribute
// nothing.
inline LocalSystemOnP1 pullback_system(int n, const BranchData& b) {
    require_supported_n(n, "pullback_system");
    if (b.n != n)
        fail(errc::domain_mismatch, "pullback_system: branch datum belongs to n = " +
                                        std::to_string(b.n) + ", not " + std::to_string(n));
    if (hurwitz_defect(b) != 0)
        fail(errc::non_zero_defect, "pullback_system: branch datum has nonzero Hurwitz defect");
    const OrbifoldSignature& sig = orbifold_signature(n);
    LocalSystemOnP1 V;
    int tag = 0;
    auto add = [&](const std::string& label, int part, const LocalMonodromyClass& base) {
        const LocalMonodromyClass c = class_power(base, part);
        if (!c.is_identity())
            V.points.push_back(
                {label + " #" + std::to_string(tag++) + " (e=" + std::to_string(part) + ")", c});
    };
    for (int x : b.part_infinity) add("inf", x, detail::cusp_class());
    for (int y : b.part_zero) add("0", y, detail::zero_point_class(n));
    for (int i = 0; i < b.q(); ++i)
        for (int z : b.part_lambda[static_cast<size_t>(i)])
            add(sig.lambda_labels[static_cast<size_t>(i)], z, detail::fricke_class());
    return V;
}

// Unordered list of the orders of the nontrivial local monodromies,
// with infinite_order for the quasi-unipotent classes.
inline std::vector<long long> monodromy_profile(const LocalSystemOnP1& V) {
    std::vector<long long> orders;
    for (const auto& p : V.points)
        if (p.cls.order() > 1) orders.push_back(p.cls.order());
    std::sort(orders.begin(), orders.end());
    return orders;
}

// ---------------------------------------------------------------------------
// Profile-preserving covers

struct CoverDescriptor {
    int degree;
    std::vector<Partition> profiles;  // aligned with V.points
    int extra_transpositions;
};

// All realizable genus-0 branch data of degree 2..d_max over the marked
// points of V whose pullback has the same monodromy profile as V. When the
// marked points carry two infinite-order classes plus another nontrivial
// class, or one infinite-order class plus at least three nontrivial finite
// ones, the list is empty.
inline std::vector<CoverDescriptor> profile_preserving_covers(const LocalSystemOnP1& V,
                                                              int d_max) {
    if (d_max < 2 || d_max > 6)
        fail(errc::invalid_argument, "profile_preserving_covers: d_max must lie in [2,6]");
    const std::vector<long long> target = monodromy_profile(V);
    std::vector<CoverDescriptor> found;
    const size_t np = V.points.size();
    for (int d = 2; d <= d_max; ++d) {
        const std::vector<Partition> parts = partitions_of(d);
        std::vector<size_t> idx(np, 0);
        while (true) {
            int ramification = 0;
            for (size_t i = 0; i < np; ++i)
                ramification += d - static_cast<int>(parts[idx[i]].size());
            const int r = 2 * d - 2 - ramification;
            if (r >= 0) {
                std::vector<long long> profile;
                for (size_t i = 0; i < np; ++i)
                    for (int e : parts[idx[i]]) {
                        const LocalMonodromyClass c = class_power(V.points[i].cls, e);
                        if (c.order() > 1) profile.push_back(c.order());
                    }
                std::sort(profile.begin(), profile.end());
                if (profile == target) {
                    std::vector<Partition> types;
                    for (size_t i = 0; i < np; ++i) types.push_back(parts[idx[i]]);
                    Partition transposition{2};
                    for (int i = 0; i < d - 2; ++i) transposition.push_back(1);
                    for (int i = 0; i < r; ++i) types.push_back(transposition);
                    if (realizable_cycle_types(types, d)) {
                        CoverDescriptor c;
                        c.degree = d;
                        c.profiles.assign(types.begin(), types.begin() + static_cast<long>(np));
                        c.extra_transpositions = r;
                        found.push_back(c);
                    }
                }
            }
            size_t pos = np;
            while (pos > 0 && ++idx[pos - 1] == parts.size()) {
                idx[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
    }
    return found;
}

}  // namespace k3fib
