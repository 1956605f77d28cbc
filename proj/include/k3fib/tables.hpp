#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k3fib/errors.hpp"
#include "k3fib/partitions.hpp"

// Embedded classification data for the nine polarizing ranks
// n in {2,3,4,5,6,7,8,9,11}: orbifold signatures of the moduli curves,
// admissible ramification profiles over lambda = 0, component counts of
// the fibres over lambda = 0 under ramified covers, generic-fibre ADE
// configurations, and the h^{2,1} correction term.

namespace k3fib {

inline const std::vector<int>& supported_n() {
    static const std::vector<int> v{2, 3, 4, 5, 6, 7, 8, 9, 11};
    return v;
}

inline bool is_supported_n(int n) {
    for (int m : supported_n())
        if (m == n) return true;
    return false;
}

inline void require_supported_n(int n, const char* where) {
    if (!is_supported_n(n))
        fail(errc::unsupported_n, std::string(where) + ": n = " + std::to_string(n) +
                                      " is not in {2,3,4,5,6,7,8,9,11}");
}

// ---------------------------------------------------------------------------
// Orbifold signatures of the moduli curves (type (2,...,2,a,inf)).

struct ZeroPoint {
    enum class Kind { elliptic, cusp };
    Kind kind;
    int value;  // elliptic order a, or cusp width

    bool is_elliptic() const { return kind == Kind::elliptic; }
    static ZeroPoint elliptic(int a) { return {Kind::elliptic, a}; }
    static ZeroPoint cusp(int width) { return {Kind::cusp, width}; }
};

struct OrbifoldSignature {
    int n;
    std::string orbifold_type;  // e.g. "(2,4,inf)"
    ZeroPoint zero_point;
    int q;  // number of order-2 points lambda_1..lambda_q
    std::vector<std::string> lambda_labels;
    int infinity_cusp_width;
};

inline const OrbifoldSignature& orbifold_signature(int n) {
    static const std::map<int, OrbifoldSignature> table = {
        {2, {2, "(2,4,inf)", ZeroPoint::elliptic(4), 1, {"256"}, 1}},
        {3, {3, "(2,6,inf)", ZeroPoint::elliptic(6), 1, {"108"}, 1}},
        {4, {4, "(2,inf,inf)", ZeroPoint::cusp(2), 1, {"64"}, 1}},
        {5, {5, "(2,2,2,inf)", ZeroPoint::elliptic(2), 2, {"22+10√5", "22-10√5"}, 1}},
        {6, {6, "(2,2,inf,inf)", ZeroPoint::cusp(1), 2, {"17+12√2", "17-12√2"}, 1}},
        {7, {7, "(2,2,3,inf)", ZeroPoint::elliptic(3), 2, {"-1", "27"}, 1}},
        {8, {8, "(2,2,inf,inf)", ZeroPoint::cusp(1), 2, {"12+8√2", "12-8√2"}, 1}},
        {9, {9, "(2,2,inf,inf)", ZeroPoint::cusp(1), 2, {"9+6√3", "9-6√3"}, 1}},
        {11,
         {11,
          "(2,2,2,2,inf)",
          ZeroPoint::elliptic(2),
          3,
          {"root 1 of λ³-20λ²+56λ-44", "root 2 of λ³-20λ²+56λ-44", "root 3 of λ³-20λ²+56λ-44"},
          1}},
    };
    auto it = table.find(n);
    if (it == table.end()) require_supported_n(n, "orbifold_signature");
    return it->second;
}

// ---------------------------------------------------------------------------
// Admissible ramification profiles over lambda = 0 (partitions of the
// covering degree d; the degree is the partition sum).

inline const std::vector<Partition>& allowed_zero_partitions(int n) {
    static const std::map<int, std::vector<Partition>> table = {
        {2,
         {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {2, 2}, {3, 2}, {4, 2},
          {3, 3}, {4, 3}, {4, 4}, {5}, {6}, {7}, {8}}},
        {3, {{1, 1}, {2, 1}, {3, 1}, {2, 2}, {3, 2}, {3, 3}, {4}, {5}, {6}}},
        {4, {{1, 1}, {2, 1}, {2, 2}, {3}, {4}}},
        {5, {{1, 1}, {2, 1}, {2, 2}, {3}, {4}}},
        {6, {{1, 1}, {2}}},
        {7, {{1, 1}, {2}, {3}}},
        {8, {{1, 1}, {2}}},
        {9, {{1, 1}, {2}}},
        {11, {{1, 1}, {2}}},
    };
    auto it = table.find(n);
    if (it == table.end()) require_supported_n(n, "allowed_zero_partitions");
    return it->second;
}

inline bool is_allowed_zero_partition(int n, const Partition& p) {
    const Partition c = canonical(p);
    for (const Partition& q : allowed_zero_partitions(n))
        if (q == c) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Component counts of the fibre over lambda = 0 under a degree-y totally
// ramified cover. Markers record the fibre/total-space quality:
//   star:        semistable Type III fibre, or a smooth K3 when count = 1
//   dagger:      singular total space (only analytic resolutions exist)

enum class Marker { plain, star, dagger, star_dagger };

inline bool marker_has_star(Marker m) { return m == Marker::star || m == Marker::star_dagger; }
inline bool marker_has_dagger(Marker m) { return m == Marker::dagger || m == Marker::star_dagger; }

inline const char* marker_name(Marker m) {
    switch (m) {
        case Marker::plain: return "plain";
        case Marker::star: return "star";
        case Marker::dagger: return "dagger";
        case Marker::star_dagger: return "star_dagger";
    }
    return "?";
}

struct ComponentEntry {
    int count;
    Marker marker;
};

namespace detail {

struct ZeroFibreRow {
    int n;
    std::vector<std::optional<ComponentEntry>> cells;  // cells[y-1]
};

inline const std::vector<ZeroFibreRow>& zero_fibre_rows() {
    constexpr auto P = Marker::plain;
    constexpr auto S = Marker::star;
    constexpr auto D = Marker::dagger;
    constexpr auto SD = Marker::star_dagger;
    auto cell = [](int c, Marker m) { return std::optional<ComponentEntry>({c, m}); };
    const std::optional<ComponentEntry> none;
    static const std::vector<ZeroFibreRow> rows = {
        {2, {cell(31, P), cell(11, P), cell(4, P), cell(1, S), cell(31, P), cell(11, P),
             cell(4, P), cell(1, S)}},
        {3, {cell(21, P), cell(6, P), cell(1, P), cell(21, P), cell(6, P), cell(1, SD), none,
             none}},
        {4, {cell(15, P), cell(3, S), cell(18, P), cell(6, S), none, none, none, none}},
        {5, {cell(11, P), cell(1, S), cell(11, P), cell(1, S), none, none, none, none}},
        {6, {cell(8, S), cell(26, S), none, none, none, none, none, none}},
        {7, {cell(6, P), cell(15, P), cell(1, SD), none, none, none, none, none}},
        {8, {cell(4, S), cell(10, S), none, none, none, none, none, none}},
        {9, {cell(3, S), cell(6, S), none, none, none, none, none, none}},
        {11, {cell(1, D), cell(1, SD), none, none, none, none, none, none}},
    };
    return rows;
}

inline const ZeroFibreRow& zero_fibre_row(int n) {
    for (const auto& row : zero_fibre_rows())
        if (row.n == n) return row;
    require_supported_n(n, "zero_fibre_components");
    throw error(errc::unsupported_n, "unreachable");
}

}  // namespace detail

inline ComponentEntry zero_fibre_components(int n, int y) {
    const auto& row = detail::zero_fibre_row(n);
    if (y < 1 || static_cast<size_t>(y) > row.cells.size() || !row.cells[y - 1])
        fail(errc::out_of_table, "zero_fibre_components: no entry for (n,y) = (" +
                                     std::to_string(n) + "," + std::to_string(y) + ")");
    return *row.cells[y - 1];
}

inline int zero_fibre_max_column(int n) {
    const auto& row = detail::zero_fibre_row(n);
    int max_y = 0;
    for (size_t i = 0; i < row.cells.size(); ++i)
        if (row.cells[i]) max_y = static_cast<int>(i) + 1;
    return max_y;
}

// ---------------------------------------------------------------------------
// h^{2,1} correction term. Nonzero exactly for the non-generic
// zero-profiles below; zero for every other admissible profile.

inline int delta_correction(int n, const Partition& zero_partition) {
    const Partition p = canonical(zero_partition);
    if (!is_allowed_zero_partition(n, p))
        fail(errc::not_allowed_partition,
             "delta_correction: [" + format_partition(p) + "] is not an allowed profile for n = " +
                 std::to_string(n));
    struct Rule {
        int n;
        Partition p;
        int delta;
    };
    static const std::vector<Rule> rules = {
        {2, {3, 3}, 2}, {2, {7}, 2},    {2, {3, 1}, 1}, {2, {3, 2}, 1},
        {2, {4, 3}, 1}, {2, {5}, 1},    {2, {6}, 1},    {2, {8}, 1},
        {3, {5}, 1},    {5, {3}, 1},    {5, {4}, 1},
    };
    for (const auto& r : rules)
        if (r.n == n && r.p == p) return r.delta;
    return 0;
}

// ---------------------------------------------------------------------------
// ADE singularity configuration of a generic fibre of the fundamental
// family, as (type, count) pairs in row order.

struct AdeType {
    char series;  // 'A' or 'D'
    int rank;

    std::string name() const { return std::string(1, series) + std::to_string(rank); }
    bool operator==(const AdeType& o) const { return series == o.series && rank == o.rank; }
};

struct AdeEntry {
    AdeType type;
    int count;
};

inline const std::vector<AdeEntry>& generic_fibre_singularities(int n) {
    static const std::map<int, std::vector<AdeEntry>> table = {
        {2, {{{'A', 3}, 6}}},
        {3, {{{'A', 1}, 3}, {{'A', 2}, 6}}},
        {4, {{{'A', 1}, 12}}},
        {5, {{{'A', 1}, 3}, {{'D', 4}, 3}}},
        {6, {{{'A', 1}, 3}, {{'A', 2}, 2}, {{'A', 3}, 2}}},
        {7, {{{'A', 1}, 1}, {{'A', 2}, 3}, {{'A', 3}, 1}, {{'A', 4}, 1}}},
        {8, {{{'A', 1}, 6}, {{'A', 2}, 3}}},
        {9, {{{'A', 1}, 3}, {{'A', 2}, 3}, {{'D', 4}, 1}}},
        {11, {{{'A', 1}, 2}, {{'A', 2}, 1}, {{'A', 3}, 2}}},
    };
    auto it = table.find(n);
    if (it == table.end()) require_supported_n(n, "generic_fibre_singularities");
    return it->second;
}

inline int ade_rank_sum(int n) {
    int sum = 0;
    for (const auto& e : generic_fibre_singularities(n)) sum += e.type.rank * e.count;
    return sum;
}

}  // namespace k3fib
