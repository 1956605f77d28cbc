#pragma once

#include <boost/rational.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "k3fib/covers.hpp"
#include "k3fib/errors.hpp"
#include "k3fib/modular.hpp"
#include "k3fib/monodromy.hpp"
#include "k3fib/tables.hpp"

// End-to-end classification of a branch datum: admissibility against the
// allowed zero-profiles, smoothness of the associated threefold, Hodge
// numbers by the closed formulas cross-checked against the monodromy
// route, fibre reports, and the mirror (degree, index) bookkeeping.

namespace k3fib {

inline bool is_admissible(const BranchData& b) {
    return is_supported_n(b.n) && hurwitz_defect(b) == 0 &&
           is_allowed_zero_partition(b.n, b.part_zero);
}

inline std::string inadmissible_reason(const BranchData& b) {
    if (!is_supported_n(b.n)) return "n = " + std::to_string(b.n) + " is not in {2,...,9,11}";
    if (hurwitz_defect(b) != 0)
        return "Hurwitz defect is " + std::to_string(hurwitz_defect(b)) + ", not 0";
    if (!is_allowed_zero_partition(b.n, b.part_zero))
        return "zero profile [" + format_partition(b.part_zero) + "] is not allowed for n = " +
               std::to_string(b.n);
    return "";
}

enum class Obstruction { n7, n11, ramified_over_lambda, n3_profile6 };

inline const char* obstruction_name(Obstruction o) {
    switch (o) {
        case Obstruction::n7: return "N7";
        case Obstruction::n11: return "N11";
        case Obstruction::ramified_over_lambda: return "RamifiedOverLambda";
        case Obstruction::n3_profile6: return "N3Profile6";
    }
    return "?";
}

// Reasons the classified threefold fails to be smooth; empty means smooth.
inline std::vector<Obstruction> smooth_obstructions(const BranchData& b) {
    if (!is_admissible(b))
        fail(errc::not_admissible, "smooth_obstructions: " + inadmissible_reason(b));
    std::vector<Obstruction> reasons;
    if (b.n == 7) reasons.push_back(Obstruction::n7);
    if (b.n == 11) reasons.push_back(Obstruction::n11);
    if (!b.lambda_all_unramified()) reasons.push_back(Obstruction::ramified_over_lambda);
    if (b.n == 3 && b.part_zero == Partition{6}) reasons.push_back(Obstruction::n3_profile6);
    return reasons;
}

inline bool is_smooth(const BranchData& b) { return smooth_obstructions(b).empty(); }

namespace detail {

inline void require_admissible(const BranchData& b, const char* where) {
    if (!is_admissible(b))
        fail(errc::not_admissible, std::string(where) + ": " + inadmissible_reason(b));
}

}  // namespace detail

// h^{1,1} = 20 + sum_i (n x_i^2 + 1) + sum_j (c(n, y_j) - 1). Defined for
// any admissible datum; it is the Hodge number of the threefold only when
// the datum is smooth.
inline int h11(const BranchData& b) {
    detail::require_admissible(b, "h11");
    int value = 20;
    for (int x : b.part_infinity) value += b.n * x * x + 1;
    for (int y : b.part_zero) value += zero_fibre_components(b.n, y).count - 1;
    return value;
}

// h^{2,1} = k + l - 2 + (m_odd - q d)/2 + delta
inline int h21_formula(const BranchData& b) {
    detail::require_admissible(b, "h21_formula");
    const int half_num = b.m_odd() - b.q() * b.degree;
    if (half_num % 2 != 0)
        fail(errc::internal_inconsistency, "h21_formula: (m_odd - qd) is odd");
    const int value = b.k() + b.l() - 2 + half_num / 2 + delta_correction(b.n, b.part_zero);
    if (value < 0) fail(errc::internal_inconsistency, "h21_formula: negative h21");
    return value;
}

// h^{2,1} through the monodromy route: b_3 = h^1 of the pulled-back local
// system, h^{2,1} = b_3/2 - 1.
inline int h21_monodromy(const BranchData& b) {
    detail::require_admissible(b, "h21_monodromy");
    const int b3 = h1_rank(pullback_system(b.n, b));
    if (b3 % 2 != 0 || b3 < 2)
        fail(errc::internal_inconsistency,
             "h21_monodromy: b3 = " + std::to_string(b3) + " is not an even integer >= 2");
    return b3 / 2 - 1;
}

// ---------------------------------------------------------------------------
// Fibre reports

struct FibreReport {
    enum class Kind { smooth_k3, nodal_k3, type_iii, zero_fibre, terminal_point };

    std::string location;  // point label
    int ramification;
    Kind kind;
    int components = 1;              // type_iii and zero_fibre
    Marker marker = Marker::plain;   // zero_fibre
    std::string detail;              // terminal type or singularity note
};

inline const char* fibre_kind_name(FibreReport::Kind k) {
    switch (k) {
        case FibreReport::Kind::smooth_k3: return "SmoothK3";
        case FibreReport::Kind::nodal_k3: return "NodalK3";
        case FibreReport::Kind::type_iii: return "TypeIII";
        case FibreReport::Kind::zero_fibre: return "ZeroFibre";
        case FibreReport::Kind::terminal_point: return "TerminalPoint";
    }
    return "?";
}

// One report per preimage of a special point: Type III fibres with
// n x^2 + 2 components over the cusp, table lookups over lambda = 0, and
// nodal K3s or compound A_k terminal points over the 2-orbifold points
// (with the doubled index at the special lambda = -1 point of n = 7).
inline std::vector<FibreReport> singular_fibre_report(const BranchData& b) {
    if (!is_admissible(b))
        fail(errc::not_admissible, "singular_fibre_report: " + inadmissible_reason(b));
    const OrbifoldSignature& sig = orbifold_signature(b.n);
    std::vector<FibreReport> reports;
    for (int x : b.part_infinity) {
        FibreReport r;
        r.location = "inf";
        r.ramification = x;
        r.kind = FibreReport::Kind::type_iii;
        r.components = b.n * x * x + 2;
        reports.push_back(r);
    }
    for (int y : b.part_zero) {
        const ComponentEntry cell = zero_fibre_components(b.n, y);
        FibreReport r;
        r.location = "0";
        r.ramification = y;
        r.kind = FibreReport::Kind::zero_fibre;
        r.components = cell.count;
        r.marker = cell.marker;
        if (cell.count == 1)
            r.detail = std::string(marker_has_star(cell.marker) ? "smooth" : "nodal") +
                       std::string(" K3") +
                       (marker_has_dagger(cell.marker) ? " (singular total space)" : "");
        reports.push_back(r);
    }
    for (int i = 0; i < b.q(); ++i) {
        const bool special_n7 = b.n == 7 && i == 0;  // the lambda = -1 point
        for (int z : b.part_lambda[static_cast<size_t>(i)]) {
            FibreReport r;
            r.location = sig.lambda_labels[static_cast<size_t>(i)];
            r.ramification = z;
            if (z == 1) {
                r.kind = FibreReport::Kind::nodal_k3;
                r.detail = special_n7 ? "A2 point; isolated cA_1 node in the total space"
                                      : "A1 point";
            } else {
                r.kind = FibreReport::Kind::terminal_point;
                r.detail = "cA_" + std::to_string(special_n7 ? 2 * z - 1 : z - 1);
            }
            reports.push_back(r);
        }
    }
    return reports;
}

// ---------------------------------------------------------------------------
// Assembled record

struct CYRecord {
    BranchData branch;
    bool admissible = false;
    std::string inadmissible_reason;
    bool smooth = false;
    std::vector<Obstruction> obstructions;
    int delta = 0;
    std::optional<int> h11, h21, b3, euler;
    std::vector<FibreReport> fibre_reports;
    ExistenceClass existence_class = ExistenceClass::no_calabi_yau;
};

// Full classification; when the datum is smooth both h^{2,1} routes are
// evaluated and must agree.
inline CYRecord classify(const BranchData& b) {
    CYRecord rec;
    rec.branch = b;
    rec.admissible = is_admissible(b);
    if (b.n >= 2) rec.existence_class = cy_existence_class(b.n);
    if (!rec.admissible) {
        rec.inadmissible_reason = k3fib::inadmissible_reason(b);
        return rec;
    }
    rec.obstructions = smooth_obstructions(b);
    rec.smooth = rec.obstructions.empty();
    rec.delta = delta_correction(b.n, b.part_zero);
    rec.fibre_reports = singular_fibre_report(b);
    if (rec.smooth) {
        const int via_formula = h21_formula(b);
        const int via_monodromy = h21_monodromy(b);
        if (via_formula != via_monodromy)
            fail(errc::internal_inconsistency,
                 "classify: h21 route disagreement (" + std::to_string(via_formula) + " vs " +
                     std::to_string(via_monodromy) + ")");
        rec.h21 = via_formula;
        rec.h11 = k3fib::h11(b);
        rec.b3 = 2 * (via_formula + 1);
        rec.euler = 2 * (*rec.h11 - via_formula);
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Mirror bookkeeping

// (n, y_i) pairs over the admissible data with two ramification points
// over lambda = 0 and no correction term. With the full degree window
// these are the fifteen (anticanonical degree, index) pairs of the rank-1
// Fano threefolds of anticanonical degree >= 2.
inline std::set<std::pair<int, int>> mirror_pairs(int d_max = 8) {
    if (d_max < 1) fail(errc::invalid_argument, "mirror_pairs: d_max must be >= 1");
    std::set<std::pair<int, int>> pairs;
    for (int n : supported_n()) {
        EnumerateOptions opts;
        opts.require_smooth = true;  // lambda profiles do not affect the pair set
        for (const BranchData& b : enumerate_branch_data(n, d_max, opts)) {
            if (b.l() != 2) continue;
            if (delta_correction(n, b.part_zero) != 0) continue;
            for (int y : b.part_zero) pairs.insert({n, y});
        }
    }
    return pairs;
}

// Anticanonical degree of a Fano threefold of the given degree and index.
inline boost::rational<long long> fano_anticanonical_degree(long long degree, long long index) {
    if (index < 1 || degree < 1)
        fail(errc::invalid_argument, "fano_anticanonical_degree: degree and index must be >= 1");
    return boost::rational<long long>(degree, 2 * index * index);
}

}  // namespace k3fib
