#include "doctest.h"

#include <sstream>

#include "k3fib/cli.hpp"
#include "k3fib/render.hpp"
#include "k3fib/selfcheck.hpp"

using namespace k3fib;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("modular subcommand") {
    const auto r = run({"modular", "13", "--format", "json"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("h1") == 2);
    CHECK(j.at("genus_plus") == 0);

    const auto table = run({"modular", "13"});
    CHECK(table.code == 0);
    CHECK(table.out.find("h1            2") != std::string::npos);

    // verbose mode surfaces both class-number readings; at n = 11 the form
    // reading gives k = 4 while the field reading would give 2
    const auto verbose = run({"modular", "11", "--verbose", "--format", "json"});
    CHECK(verbose.code == 0);
    const json vj = json::parse(verbose.out);
    CHECK(vj.at("class_numbers").at("k_smooth_form_reading") == 4);
    CHECK(vj.at("class_numbers").at("k_smooth_field_reading") == 2);
    CHECK(vj.at("class_numbers").at("form_minus_4n") == 3);
    CHECK(vj.at("class_numbers").at("form_minus_n") == 1);
    CHECK(vj.at("class_numbers").at("field_class_number") == 1);

    CHECK(run({"modular", "1"}).code == 1);
}

TEST_CASE("classify subcommand") {
    const auto r = run({"classify", "2", "--infinity", "8", "--zero", "4,4", "--lambda",
                        "1,1,1,1,1,1,1,1", "--extra", "1", "--format", "json"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("h11") == 149);
    CHECK(j.at("h21") == 1);
    CHECK(j.at("b3") == 4);
    CHECK(j.at("smooth") == true);

    // Hurwitz violation: exit code 2
    const auto bad = run({"classify", "2", "--infinity", "1,1,1,1,1,1,1,1", "--zero", "4,4",
                          "--lambda", "1,1,1,1,1,1,1,1", "--extra", "0"});
    CHECK(bad.code == 2);

    // partition outside the allowed table: exit code 2, record still printed
    const auto notallowed = run({"classify", "2", "--infinity", "4", "--zero", "4", "--lambda",
                                 "1,1,1,1", "--extra", "1", "--format", "json"});
    CHECK(notallowed.code == 2);
    const json nj = json::parse(notallowed.out);
    CHECK(nj.at("admissible") == false);

    // malformed partition: exit code 1
    CHECK(run({"classify", "2", "--infinity", "8", "--zero", "x", "--lambda", "1", "--extra",
               "1"}).code == 1);

    // unknown flag rejected before any computation
    CHECK(run({"classify", "2", "--nope", "1"}).code == 1);
}

TEST_CASE("rank subcommand") {
    const auto base = run({"rank", "2"});
    CHECK(base.code == 0);
    CHECK(base.out.find("h1 = 0") != std::string::npos);
    CHECK(base.out.find("256") != std::string::npos);

    const auto pulled = run({"rank", "2", "--infinity", "8", "--zero", "4,4", "--lambda",
                             "1,1,1,1,1,1,1,1", "--extra", "1"});
    CHECK(pulled.code == 0);
    CHECK(pulled.out.find("h1 = 4") != std::string::npos);

    const auto defect = run({"rank", "2", "--infinity", "2", "--zero", "1,1", "--lambda", "1,1",
                             "--extra", "0"});
    CHECK(defect.code == 2);

    const auto as_json = run({"rank", "13", "--format", "json"});
    CHECK(as_json.code == 0);
    const json rj = json::parse(as_json.out);
    CHECK(rj.at("h1") == 2);
    CHECK(rj.at("points").size() == 5);
}

TEST_CASE("enumerate subcommand") {
    const auto csv = run({"enumerate", "6", "--max-degree", "2", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.find("n,d,infinity,zero,lambda_1,lambda_2,r") == 0);
    CHECK(csv.out.find("\"1,1\"") != std::string::npos);  // RFC quoting of comma fields

    // byte-determinism, with and without shards
    const auto again = run({"enumerate", "6", "--max-degree", "2", "--format", "csv"});
    CHECK(csv.out == again.out);
    const auto sharded =
        run({"enumerate", "6", "--max-degree", "2", "--format", "csv", "--shards", "3"});
    CHECK(sharded.out == csv.out);

    const auto json_run = run({"enumerate", "5", "--max-degree", "3", "--format", "json"});
    CHECK(json_run.code == 0);
    const json arr = json::parse(json_run.out);
    CHECK(arr.is_array());
    CHECK(arr.size() > 0);

    // the degree cap rejects oversized requests
    CHECK(run({"enumerate", "2", "--max-degree", "9"}).code == 1);

    // K3FIB_MAX_DEGREE lowers the cap
    setenv("K3FIB_MAX_DEGREE", "3", 1);
    CHECK(run({"enumerate", "2", "--max-degree", "4"}).code == 1);
    CHECK(run({"enumerate", "2", "--max-degree", "3"}).code == 0);
    unsetenv("K3FIB_MAX_DEGREE");

    // the unordered fold keeps the representative with sorted lambda slots
    const auto folded = run({"enumerate", "5", "--max-degree", "2", "--format", "csv",
                             "--lambda-unordered"});
    CHECK(folded.code == 0);
    CHECK(folded.out.find("5,2,\"1,1\",\"1,1\",\"1,1\",2,1\n") != std::string::npos);  // kept
    CHECK(folded.out.find("5,2,\"1,1\",\"1,1\",2,\"1,1\",1\n") == std::string::npos);  // folded
}

TEST_CASE("check subcommand") {
    const auto r = run({"check"});
    CHECK(r.code == 0);
    CHECK(r.out.find("ok   mirror-pairs") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    // one line per suite
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 10);
}

TEST_CASE("mirror pairs and dump-tables subcommands") {
    const auto pairs = run({"mirror-pairs", "--format", "csv"});
    CHECK(pairs.code == 0);
    CHECK(std::count(pairs.out.begin(), pairs.out.end(), '\n') == 16);  // header + 15 rows

    const auto tables = run({"dump-tables"});
    CHECK(tables.code == 0);
    const json j = json::parse(tables.out);
    CHECK(j.at("allowed_zero_partitions").at("2").size() == 14);
    CHECK(j.at("zero_fibre_components").at("2").at("1").at("components") == 31);
    CHECK(j.at("orbifold_points").at("5").at("lambda")[0] == "22+10√5");
}

TEST_CASE("render round trips") {
    const BranchData b = make_branch_data(5, {4}, {2, 2}, {all_ones(4), all_ones(4)}, 1);
    const CYRecord rec = classify(b);

    // json -> parse -> compare fields
    const json j = to_json(rec);
    CHECK(j.at("branch").at("zero") == json::parse("[2,2]"));
    CHECK(j.at("h11") == 101);

    // table contains the same payload
    const std::string table = record_table(rec);
    CHECK(table.find("101") != std::string::npos);

    // unicode lambda labels survive the json path verbatim
    const json t = tables_json();
    const bool label_preserved =
        t.at("orbifold_points").at("5").at("lambda")[0].get<std::string>() == "22+10√5";
    CHECK(label_preserved);

    // empty record list renders as an empty array / header-only csv
    CHECK(branch_data_csv({}, 1) == "n,d,infinity,zero,lambda_1,r\n");
}

TEST_CASE("csv quoting") {
    CHECK(csv_quote("plain") == "plain");
    CHECK(csv_quote("a,b") == "\"a,b\"");
    CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("corrupted table fixture trips the law check") {
    auto corrupted = [](int n, int y) {
        ComponentEntry e = zero_fibre_components(n, y);
        if (n == 6 && y == 2) e.count = 27;  // break the Type III covering law
        return e;
    };
    const CheckResult bad = checks::table_consistency(corrupted);
    CHECK_FALSE(bad.passed());
    const CheckResult good = checks::table_consistency();
    CHECK(good.passed());
}
