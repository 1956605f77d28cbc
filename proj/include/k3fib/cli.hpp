#pragma once

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "k3fib/render.hpp"
#include "k3fib/selfcheck.hpp"

// Command-line front end. Flags are validated before any computation runs
// and all output is byte-deterministic for fixed inputs. Exit codes:
// 0 success, 1 invalid input, 2 constraint violation, 3 internal
// consistency failure.

namespace k3fib {

namespace cli_detail {

inline int max_degree_cap() {
    if (const char* env = std::getenv("K3FIB_MAX_DEGREE")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1) return cap;
        } catch (const std::exception&) {
        }
        fail(errc::invalid_argument, "K3FIB_MAX_DEGREE must be a positive integer");
    }
    return 8;
}

inline void enforce_degree_cap(int requested) {
    const int cap = max_degree_cap();
    if (requested > cap)
        fail(errc::invalid_argument, "requested degree " + std::to_string(requested) +
                                         " exceeds the K3FIB_MAX_DEGREE cap of " +
                                         std::to_string(cap));
}

inline BranchData branch_from_flags(int n, const std::string& infinity, const std::string& zero,
                                    const std::vector<std::string>& lambda, int extra) {
    std::vector<Partition> lambdas;
    for (const std::string& l : lambda) lambdas.push_back(parse_partition(l));
    return make_branch_data(n, parse_partition(infinity), parse_partition(zero),
                            std::move(lambdas), extra);
}

// Sharded enumeration: zero-profiles are distributed round-robin over the
// shards and the merged output re-sorted, so the result is byte-identical
// to the single-shard run.
inline std::vector<BranchData> enumerate_sharded(int n, int d_max, EnumerateOptions opts,
                                                 int shards) {
    if (shards <= 1) return enumerate_branch_data(n, d_max, opts);
    EnumerateOptions worker_opts = opts;
    worker_opts.dedup_lambda_unordered = false;  // fold after the merge
    const auto& zeros = allowed_zero_partitions(n);
    std::vector<std::vector<BranchData>> partial(static_cast<size_t>(shards));
    std::vector<std::thread> workers;
    for (int s = 0; s < shards; ++s) {
        workers.emplace_back([&, s] {
            for (size_t i = static_cast<size_t>(s); i < zeros.size();
                 i += static_cast<size_t>(shards)) {
                if (partition_sum(zeros[i]) > d_max) continue;
                const auto part = enumerate_for_zero_profile(n, zeros[i], worker_opts);
                partial[static_cast<size_t>(s)].insert(partial[static_cast<size_t>(s)].end(),
                                                       part.begin(), part.end());
            }
        });
    }
    for (auto& w : workers) w.join();
    std::vector<BranchData> merged;
    for (const auto& p : partial) merged.insert(merged.end(), p.begin(), p.end());
    if (opts.dedup_lambda_unordered) {
        std::erase_if(merged, [](const BranchData& b) {
            return !std::is_sorted(b.part_lambda.begin(), b.part_lambda.end());
        });
    }
    std::sort(merged.begin(), merged.end());
    return merged;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Classification toolkit for Calabi-Yau threefolds fibred by rank-19 "
                 "lattice polarized K3 surfaces"};
    app.require_subcommand(1);

    // modular
    long long modular_n = 0;
    std::string modular_format = "table";
    bool modular_verbose = false;
    auto* modular_cmd = app.add_subcommand("modular", "Invariants of X_0(n) and X_0(n)+");
    modular_cmd->add_option("n", modular_n, "level")->required();
    modular_cmd->add_flag("--verbose", modular_verbose,
                          "also show both class-number readings behind k_smooth");
    modular_cmd->add_option("--format", modular_format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    // rank
    int rank_n = 0;
    std::string rank_format = "table";
    std::string rank_infinity, rank_zero;
    std::vector<std::string> rank_lambda;
    int rank_extra = 0;
    auto* rank_cmd =
        app.add_subcommand("rank", "Marked points and h1 of V_n^+ or of a pullback");
    rank_cmd->add_option("n", rank_n, "level")->required();
    rank_cmd->add_option("--infinity", rank_infinity, "ramification profile over infinity");
    rank_cmd->add_option("--zero", rank_zero, "ramification profile over 0");
    rank_cmd->add_option("--lambda", rank_lambda, "ramification profile over each lambda point");
    rank_cmd->add_option("--extra", rank_extra, "extra simple branch points");
    rank_cmd->add_option("--format", rank_format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    // enumerate
    int enum_n = 0, enum_dmax = 0, enum_shards = 1;
    bool enum_smooth = false, enum_lambda_unordered = false;
    std::optional<int> enum_rmax;
    std::string enum_format = "table";
    auto* enum_cmd = app.add_subcommand("enumerate", "Enumerate admissible branch data");
    enum_cmd->add_option("n", enum_n, "polarization index")->required();
    enum_cmd->add_option("--max-degree", enum_dmax, "largest covering degree")->required();
    enum_cmd->add_flag("--smooth", enum_smooth, "restrict to unramified lambda profiles");
    enum_cmd->add_flag("--lambda-unordered", enum_lambda_unordered,
                       "fold data equal up to lambda-slot permutation");
    enum_cmd->add_option("--r-max", enum_rmax, "cap on extra simple branch points");
    enum_cmd->add_option("--shards", enum_shards, "deterministic parallel shards")
        ->check(CLI::PositiveNumber);
    enum_cmd->add_option("--format", enum_format, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));

    // classify
    int cls_n = 0, cls_extra = 0;
    std::string cls_infinity, cls_zero, cls_format = "table";
    std::vector<std::string> cls_lambda;
    auto* cls_cmd = app.add_subcommand("classify", "Classify one branch datum");
    cls_cmd->add_option("n", cls_n, "polarization index")->required();
    cls_cmd->add_option("--infinity", cls_infinity, "profile over infinity")->required();
    cls_cmd->add_option("--zero", cls_zero, "profile over 0")->required();
    cls_cmd->add_option("--lambda", cls_lambda, "profile over each lambda point");
    cls_cmd->add_option("--extra", cls_extra, "extra simple branch points");
    cls_cmd->add_option("--format", cls_format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));

    // mirror-pairs
    int mirror_dmax = 8;
    std::string mirror_format = "table";
    auto* mirror_cmd = app.add_subcommand("mirror-pairs", "The (degree, index) mirror pairs");
    mirror_cmd->add_option("--max-degree", mirror_dmax, "degree window (8 is exhaustive)");
    mirror_cmd->add_option("--format", mirror_format, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));

    // dump-tables
    std::string dump_format = "json";
    auto* dump_cmd = app.add_subcommand("dump-tables", "Export the embedded tables as JSON");
    dump_cmd->add_option("--format", dump_format, "json")->check(CLI::IsMember({"json"}));

    // check
    auto* check_cmd = app.add_subcommand("check", "Run the embedded-data consistency suites");

    std::vector<const char*> argv;
    argv.push_back("k3fib");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*modular_cmd) {
            const ModularCurveData d = modular_curve_data(modular_n);
            if (modular_format == "json") {
                json j = to_json(d);
                if (modular_verbose) j["class_numbers"] = class_numbers_json(modular_n);
                out << j.dump(2) << '\n';
            } else {
                out << modular_table(d);
                if (modular_verbose) out << class_numbers_table(modular_n);
            }
            return 0;
        }
        if (*rank_cmd) {
            LocalSystemOnP1 V;
            if (rank_infinity.empty() && rank_zero.empty() && rank_lambda.empty() &&
                rank_extra == 0) {
                V = vplus_system(rank_n);
            } else {
                if (rank_infinity.empty() || rank_zero.empty())
                    fail(errc::invalid_argument,
                         "rank: a branch datum needs --infinity and --zero");
                const BranchData b = cli_detail::branch_from_flags(
                    rank_n, rank_infinity, rank_zero, rank_lambda, rank_extra);
                if (hurwitz_defect(b) != 0)
                    fail(errc::non_zero_defect, "rank: branch datum has Hurwitz defect " +
                                                    std::to_string(hurwitz_defect(b)));
                V = pullback_system(rank_n, b);
            }
            if (rank_format == "json") {
                json j = to_json(V);
                j["h1"] = h1_rank(V);
                out << j.dump(2) << '\n';
            } else {
                out << local_system_table(V);
            }
            return 0;
        }
        if (*enum_cmd) {
            cli_detail::enforce_degree_cap(enum_dmax);
            EnumerateOptions opts;
            opts.require_smooth = enum_smooth;
            opts.dedup_lambda_unordered = enum_lambda_unordered;
            opts.r_max = enum_rmax;
            const auto data = cli_detail::enumerate_sharded(enum_n, enum_dmax, opts, enum_shards);
            const int q = orbifold_signature(enum_n).q;
            if (enum_format == "json") {
                json arr = json::array();
                for (const BranchData& b : data) arr.push_back(to_json(b));
                out << arr.dump(2) << '\n';
            } else if (enum_format == "csv") {
                out << branch_data_csv(data, q);
            } else {
                for (const BranchData& b : data) {
                    out << "n=" << b.n << " d=" << b.degree << " inf=["
                        << format_partition(b.part_infinity) << "] zero=["
                        << format_partition(b.part_zero) << "]";
                    for (int i = 0; i < b.q(); ++i)
                        out << " lambda_" << i + 1 << "=["
                            << format_partition(b.part_lambda[static_cast<size_t>(i)]) << "]";
                    out << " r=" << b.r_extra << '\n';
                }
                out << "total " << data.size() << " (degree window <= " << enum_dmax << ")\n";
            }
            return 0;
        }
        if (*cls_cmd) {
            const BranchData b = cli_detail::branch_from_flags(cls_n, cls_infinity, cls_zero,
                                                               cls_lambda, cls_extra);
            const CYRecord rec = classify(b);
            if (cls_format == "json")
                out << to_json(rec).dump(2) << '\n';
            else
                out << record_table(rec);
            if (hurwitz_defect(b) != 0 || !rec.admissible) return 2;
            return 0;
        }
        if (*mirror_cmd) {
            cli_detail::enforce_degree_cap(mirror_dmax);
            const auto pairs = mirror_pairs(mirror_dmax);
            if (mirror_format == "json") {
                json arr = json::array();
                for (const auto& [n, y] : pairs) arr.push_back(json::array({n, y}));
                out << arr.dump(2) << '\n';
            } else if (mirror_format == "csv") {
                out << "n,y\n";
                for (const auto& [n, y] : pairs) out << n << ',' << y << '\n';
            } else {
                for (const auto& [n, y] : pairs) out << '(' << n << ", " << y << ")\n";
                out << "total " << pairs.size() << " (degree window <= " << mirror_dmax
                    << (mirror_dmax >= 8 ? ", exhaustive)" : ", partial census)") << '\n';
            }
            return 0;
        }
        if (*dump_cmd) {
            out << tables_json().dump(2) << '\n';
            return 0;
        }
        if (*check_cmd) {
            bool all_ok = true;
            for (const CheckResult& r : run_all_checks()) {
                if (r.passed()) {
                    out << "ok   " << r.name << " (" << r.checks << " checks)\n";
                } else {
                    all_ok = false;
                    out << "FAIL " << r.name << " (" << r.failures.size() << " of " << r.checks
                        << " checks failed)\n";
                    for (const std::string& f : r.failures) out << "     " << f << '\n';
                }
            }
            return all_ok ? 0 : 3;
        }
    } catch (const error& e) {
        err << "error: " << e.what() << " [" << errc_name(e.code()) << "]\n";
        return exit_code_for(e.code());
    }
    err << "error: no subcommand\n";
    return 1;
}

}  // namespace k3fib
