#pragma once

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "k3fib/hodge.hpp"
#include "k3fib/modular.hpp"
#include "k3fib/monodromy.hpp"
#include "k3fib/tables.hpp"

// Deterministic serialization of the library records: JSON (sorted keys),
// RFC-quoted CSV, and aligned text tables.

namespace k3fib {

using json = nlohmann::json;

enum class OutputFormat { table, json, csv };

inline OutputFormat parse_format(const std::string& s) {
    if (s == "table") return OutputFormat::table;
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    fail(errc::invalid_argument, "unknown format '" + s + "' (expected table, json or csv)");
}

inline json to_json(const ModularCurveData& d) {
    return json{{"n", d.n},
                {"index", d.index},
                {"nu2", d.nu2},
                {"nu3", d.nu3},
                {"nu_inf", d.nu_inf},
                {"genus", d.genus},
                {"fricke_fixed", d.fricke_fixed},
                {"k_smooth", d.k_smooth},
                {"genus_plus", d.genus_plus},
                {"h1", d.h1_vplus}};
}

inline json class_numbers_json(long long n) {
    const ClassNumberComparison c = class_number_comparison(n);
    json j{{"form_minus_4n", c.form_minus_4n},
           {"field_discriminant", c.field_discriminant},
           {"field_class_number", c.field_class_number},
           {"k_smooth_form_reading", c.k_smooth_form_reading},
           {"k_smooth_field_reading", c.k_smooth_field_reading}};
    if (c.form_minus_n) j["form_minus_n"] = *c.form_minus_n;
    return j;
}

inline std::string class_numbers_table(long long n) {
    const ClassNumberComparison c = class_number_comparison(n);
    std::ostringstream os;
    os << "h(-4n) = h(" << -4 * n << ") = " << c.form_minus_4n << " (form class number)\n";
    if (c.form_minus_n)
        os << "h(-n)  = h(" << -n << ") = " << *c.form_minus_n << " (form class number)\n";
    os << "h(Q(sqrt(" << -n << "))) = " << c.field_class_number << " (field class number, disc "
       << c.field_discriminant << ")\n";
    os << "k_smooth, form reading:  " << c.k_smooth_form_reading << (n <= 4 ? " (unused: n <= 4)" : "")
       << '\n';
    os << "k_smooth, field reading: " << c.k_smooth_field_reading << " (not used)\n";
    return os.str();
}

inline json to_json(const BranchData& b) {
    json lambda = json::array();
    for (const auto& p : b.part_lambda) lambda.push_back(p);
    return json{{"n", b.n},           {"degree", b.degree}, {"infinity", b.part_infinity},
                {"zero", b.part_zero}, {"lambda", lambda},   {"r", b.r_extra}};
}

inline json to_json(const FibreReport& r) {
    json j{{"location", r.location},
           {"ramification", r.ramification},
           {"kind", fibre_kind_name(r.kind)}};
    if (r.kind == FibreReport::Kind::type_iii || r.kind == FibreReport::Kind::zero_fibre)
        j["components"] = r.components;
    if (r.kind == FibreReport::Kind::zero_fibre) j["marker"] = marker_name(r.marker);
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

inline json to_json(const CYRecord& rec) {
    json j{{"branch", to_json(rec.branch)},
           {"admissible", rec.admissible},
           {"smooth", rec.smooth},
           {"delta", rec.delta},
           {"existence_class", existence_class_name(rec.existence_class)}};
    if (!rec.admissible && !rec.inadmissible_reason.empty())
        j["inadmissible_reason"] = rec.inadmissible_reason;
    if (!rec.obstructions.empty()) {
        json obs = json::array();
        for (auto o : rec.obstructions) obs.push_back(obstruction_name(o));
        j["obstructions"] = obs;
    }
    if (rec.h11) j["h11"] = *rec.h11;
    if (rec.h21) j["h21"] = *rec.h21;
    if (rec.b3) j["b3"] = *rec.b3;
    if (rec.euler) j["euler"] = *rec.euler;
    json reports = json::array();
    for (const auto& r : rec.fibre_reports) reports.push_back(to_json(r));
    j["fibre_reports"] = reports;
    return j;
}

inline json to_json(const LocalSystemOnP1& V) {
    json points = json::array();
    for (const auto& p : V.points)
        points.push_back(json{{"label", p.label},
                              {"class", p.cls.describe()},
                              {"order", p.cls.order() == infinite_order
                                            ? json("inf")
                                            : json(p.cls.order())},
                              {"R", p.cls.drop()}});
    return json{{"rank", V.rank}, {"base_genus", V.base_genus}, {"points", points}};
}

// Every embedded table, keyed by n.
inline json tables_json() {
    json orbifold, partitions, zero_fibres, singularities;
    for (int n : supported_n()) {
        const std::string key = std::to_string(n);
        const OrbifoldSignature& s = orbifold_signature(n);
        orbifold[key] = json{{"orbifold_type", s.orbifold_type},
                             {"zero_point",
                              json{{"kind", s.zero_point.is_elliptic() ? "elliptic" : "cusp"},
                                   {s.zero_point.is_elliptic() ? "order" : "width",
                                    s.zero_point.value}}},
                             {"q", s.q},
                             {"lambda", s.lambda_labels},
                             {"infinity_cusp_width", s.infinity_cusp_width}};
        json parts = json::array();
        for (const Partition& p : allowed_zero_partitions(n)) parts.push_back(p);
        partitions[key] = parts;
        json cells;
        for (int y = 1; y <= zero_fibre_max_column(n); ++y) {
            try {
                const ComponentEntry e = zero_fibre_components(n, y);
                cells[std::to_string(y)] =
                    json{{"components", e.count}, {"marker", marker_name(e.marker)}};
            } catch (const error&) {
                // unpopulated interior cells simply stay absent
            }
        }
        zero_fibres[key] = cells;
        json ade = json::array();
        for (const AdeEntry& e : generic_fibre_singularities(n))
            ade.push_back(json{{"type", e.type.name()}, {"count", e.count}});
        singularities[key] = ade;
    }
    return json{{"orbifold_points", orbifold},
                {"allowed_zero_partitions", partitions},
                {"zero_fibre_components", zero_fibres},
                {"generic_fibre_singularities", singularities}};
}

// ---------------------------------------------------------------------------
// CSV

inline std::string csv_quote(const std::string& field) {
    const bool needs = field.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string branch_data_csv(const std::vector<BranchData>& data, int q) {
    std::ostringstream os;
    os << "n,d,infinity,zero";
    for (int i = 1; i <= q; ++i) os << ",lambda_" << i;
    os << ",r\n";
    for (const BranchData& b : data) {
        os << b.n << ',' << b.degree << ',' << csv_quote(format_partition(b.part_infinity)) << ','
           << csv_quote(format_partition(b.part_zero));
        for (const auto& p : b.part_lambda) os << ',' << csv_quote(format_partition(p));
        os << ',' << b.r_extra << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Aligned text

inline std::string modular_table(const ModularCurveData& d) {
    std::ostringstream os;
    auto row = [&os](const char* name, long long v) {
        os << std::left << std::setw(14) << name << v << '\n';
    };
    row("n", d.n);
    row("index", d.index);
    row("nu2", d.nu2);
    row("nu3", d.nu3);
    row("nu_inf", d.nu_inf);
    row("genus", d.genus);
    row("fricke_fixed", d.fricke_fixed);
    row("k_smooth", d.k_smooth);
    row("genus_plus", d.genus_plus);
    row("h1", d.h1_vplus);
    return os.str();
}

inline std::string local_system_table(const LocalSystemOnP1& V) {
    std::ostringstream os;
    size_t label_w = 5, class_w = 5;
    for (const auto& p : V.points) {
        label_w = std::max(label_w, p.label.size());
        class_w = std::max(class_w, p.cls.describe().size());
    }
    os << std::left << std::setw(static_cast<int>(label_w) + 2) << "point"
       << std::setw(static_cast<int>(class_w) + 2) << "class" << std::setw(7) << "order"
       << "R\n";
    for (const auto& p : V.points) {
        std::string order = p.cls.order() == infinite_order ? "inf" : std::to_string(p.cls.order());
        os << std::left << std::setw(static_cast<int>(label_w) + 2) << p.label
           << std::setw(static_cast<int>(class_w) + 2) << p.cls.describe() << std::setw(7) << order
           << p.cls.drop() << '\n';
    }
    os << "h1 = " << h1_rank(V) << '\n';
    return os.str();
}

inline std::string record_table(const CYRecord& rec) {
    std::ostringstream os;
    os << "n            " << rec.branch.n << '\n';
    os << "degree       " << rec.branch.degree << '\n';
    os << "infinity     [" << format_partition(rec.branch.part_infinity) << "]\n";
    os << "zero         [" << format_partition(rec.branch.part_zero) << "]\n";
    for (int i = 0; i < rec.branch.q(); ++i)
        os << "lambda_" << i + 1 << "     [" <<
            format_partition(rec.branch.part_lambda[static_cast<size_t>(i)]) << "]\n";
    os << "r            " << rec.branch.r_extra << '\n';
    os << "admissible   " << (rec.admissible ? "yes" : "no") << '\n';
    if (!rec.admissible) {
        os << "reason       " << rec.inadmissible_reason << '\n';
        return os.str();
    }
    os << "smooth       " << (rec.smooth ? "yes" : "no") << '\n';
    if (!rec.obstructions.empty()) {
        os << "obstructions ";
        for (size_t i = 0; i < rec.obstructions.size(); ++i)
            os << (i ? " " : "") << obstruction_name(rec.obstructions[i]);
        os << '\n';
    }
    os << "delta        " << rec.delta << '\n';
    if (rec.smooth) {
        os << "h11          " << *rec.h11 << '\n';
        os << "h21          " << *rec.h21 << '\n';
        os << "b3           " << *rec.b3 << '\n';
        os << "euler        " << *rec.euler << " (derived: 2(h11-h21))\n";
    }
    os << "existence    " << existence_class_name(rec.existence_class) << '\n';
    os << "fibres:\n";
    for (const auto& r : rec.fibre_reports) {
        os << "  " << r.location << " (e=" << r.ramification << "): " << fibre_kind_name(r.kind);
        if (r.kind == FibreReport::Kind::type_iii || r.kind == FibreReport::Kind::zero_fibre)
            os << " components=" << r.components;
        if (r.kind == FibreReport::Kind::zero_fibre && r.marker != Marker::plain)
            os << " marker=" << marker_name(r.marker);
        if (!r.detail.empty()) os << " [" << r.detail << "]";
        os << '\n';
    }
    return os.str();
}

}  // namespace k3fib
