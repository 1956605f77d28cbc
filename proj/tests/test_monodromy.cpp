#include "doctest.h"

#include <algorithm>
#include <map>

#include "k3fib/monodromy.hpp"

using namespace k3fib;

namespace {

int sum_drops(const LocalSystemOnP1& V) {
    int s = 0;
    for (const auto& p : V.points) s += p.cls.drop();
    return s;
}

std::map<std::string, int> class_census(const LocalSystemOnP1& V) {
    std::map<std::string, int> census;
    for (const auto& p : V.points) ++census[p.cls.describe()];
    return census;
}

}  // namespace

TEST_CASE("local monodromy classes") {
    const auto fricke = LocalMonodromyClass::semisimple(0, 0, Frac(1, 2));
    CHECK(fricke.drop() == 1);
    CHECK(fricke.order() == 2);

    const auto order4 = LocalMonodromyClass::semisimple(Frac(1, 4), Frac(1, 2), Frac(3, 4));
    CHECK(order4.drop() == 3);
    CHECK(order4.order() == 4);

    const auto unipotent = LocalMonodromyClass::full_jordan(0);
    CHECK(unipotent.drop() == 2);
    CHECK(unipotent.order() == infinite_order);
    const auto quasi = LocalMonodromyClass::full_jordan(Frac(1, 2));
    CHECK(quasi.drop() == 3);

    CHECK(class_power(order4, 4).is_identity());
    CHECK(class_power(quasi, 3) == quasi);
    CHECK(class_power(LocalMonodromyClass::semisimple(0, Frac(1, 3), Frac(2, 3)), 3).is_identity());

    // powers of finite-order classes close at the order; unipotent drop is
    // stable under powers
    for (const auto& c : {fricke, order4, LocalMonodromyClass::semisimple(0, Frac(1, 2), Frac(1, 2))})
        CHECK(class_power(c, c.order()).is_identity());
    for (long long e = 1; e <= 6; ++e) CHECK(class_power(unipotent, e).drop() == 2);

    CHECK_THROWS_AS(LocalMonodromyClass::full_jordan(Frac(1, 3)), error);
}

TEST_CASE("symmetric squares of weight-one classes") {
    CHECK(sym_square_class(Weight1Class::rotation(Frac(1, 4))) ==
          LocalMonodromyClass::semisimple(0, Frac(1, 2), Frac(1, 2)));
    CHECK(sym_square_class(Weight1Class::rotation(Frac(1, 3))) ==
          LocalMonodromyClass::semisimple(0, Frac(1, 3), Frac(2, 3)));
    CHECK(sym_square_class(Weight1Class::rotation(Frac(1, 6))) ==
          LocalMonodromyClass::semisimple(0, Frac(1, 3), Frac(2, 3)));
    CHECK(sym_square_class(Weight1Class::parabolic_class()) ==
          LocalMonodromyClass::full_jordan(0));
}

TEST_CASE("fundamental local systems") {
    const auto V2 = vplus_system(2);
    REQUIRE(V2.points.size() == 3);
    std::vector<int> drops;
    for (const auto& p : V2.points) drops.push_back(p.cls.drop());
    std::sort(drops.begin(), drops.end());
    CHECK(drops == std::vector<int>{1, 2, 3});
    CHECK(h1_rank(V2) == 0);

    const auto V7 = vplus_system(7);
    REQUIRE(V7.points.size() == 4);
    CHECK(V7.points[0].label == "0");
    CHECK(V7.points[0].cls == LocalMonodromyClass::semisimple(0, Frac(1, 3), Frac(2, 3)));
    CHECK(V7.points[1].label == "-1");
    CHECK(V7.points[2].label == "27");
    CHECK(V7.points[1].cls == LocalMonodromyClass::semisimple(0, 0, Frac(1, 2)));
    CHECK(V7.points[3].cls == LocalMonodromyClass::full_jordan(0));

    const auto V9 = vplus_system(9);
    const auto census9 = class_census(V9);
    CHECK(census9.at(LocalMonodromyClass::full_jordan(0).describe()) == 2);
    CHECK(census9.at(LocalMonodromyClass::semisimple(0, 0, Frac(1, 2)).describe()) == 2);

    for (int n : supported_n()) CHECK(sum_drops(vplus_system(n)) == 6);
    CHECK_THROWS_AS(vplus_system(1), error);
}

TEST_CASE("generic construction matches modular counts") {
    for (int n = 5; n <= 30; ++n) {
        if (genus_x0_plus(n) != 0) continue;
        const auto V = vplus_system(n);
        CHECK(h1_rank(V) == h1_invariant(n));
    }
    // supported rows with n > 4 follow the generic bucket counts
    for (int n : {5, 6, 7, 8, 9, 11}) {
        const ModularCurveData md = modular_curve_data(n);
        const auto census = class_census(vplus_system(n));
        auto count = [&](const LocalMonodromyClass& c) {
            auto it = census.find(c.describe());
            return it == census.end() ? 0 : it->second;
        };
        CHECK(count(LocalMonodromyClass::semisimple(0, 0, Frac(1, 2))) == md.k_smooth);
        CHECK(count(LocalMonodromyClass::semisimple(0, Frac(1, 2), Frac(1, 2))) == md.nu2 / 2);
        CHECK(count(LocalMonodromyClass::semisimple(0, Frac(1, 3), Frac(2, 3))) == md.nu3 / 2);
        CHECK(count(LocalMonodromyClass::full_jordan(0)) == md.nu_inf / 2);
    }
}

TEST_CASE("rank formula") {
    CHECK(h1_rank(vplus_system(13)) == 2);

    LocalSystemOnP1 empty;
    CHECK_THROWS_AS(h1_rank(empty), error);

    const BranchData b = make_branch_data(2, {8}, {4, 4}, {all_ones(8)}, 1);
    const auto pulled = pullback_system(2, b);
    CHECK(sum_drops(pulled) == 10);
    CHECK(h1_rank(pulled) == 4);

    const BranchData b5 = make_branch_data(5, {4}, {2, 2}, {all_ones(4), all_ones(4)}, 1);
    CHECK(h1_rank(pullback_system(5, b5)) == 4);

    // identity pullback reproduces the fundamental system
    for (int n : supported_n()) {
        const auto base = vplus_system(n);
        const auto pb = pullback_system(n, identity_branch_data(n));
        CHECK(monodromy_profile(pb) == monodromy_profile(base));
        CHECK(h1_rank(pb) == h1_rank(base));
    }

    // h1 of any pullback is even (weight-3 Hodge structure)
    for (int n : supported_n())
        for (const BranchData& d : enumerate_branch_data(n, 3))
            CHECK(h1_rank(pullback_system(n, d)) % 2 == 0);

    CHECK_THROWS_AS(pullback_system(3, identity_branch_data(2)), error);
    const BranchData defective{5, 2, {2}, {1, 1}, {{1, 1}, {1, 1}}, 0};
    CHECK_THROWS_AS(pullback_system(5, defective), error);
}

TEST_CASE("monodromy profiles") {
    CHECK(monodromy_profile(vplus_system(2)) ==
          std::vector<long long>{2, 4, infinite_order});
    CHECK(monodromy_profile(vplus_system(8)) ==
          std::vector<long long>{2, 2, infinite_order, infinite_order});
    // profile equals the orbifold type of the moduli curve
    const std::map<int, std::vector<long long>> expected{
        {2, {2, 4, infinite_order}},
        {3, {2, 6, infinite_order}},
        {4, {2, infinite_order, infinite_order}},
        {5, {2, 2, 2, infinite_order}},
        {6, {2, 2, infinite_order, infinite_order}},
        {7, {2, 2, 3, infinite_order}},
        {8, {2, 2, infinite_order, infinite_order}},
        {9, {2, 2, infinite_order, infinite_order}},
        {11, {2, 2, 2, 2, infinite_order}},
    };
    for (const auto& [n, profile] : expected) CHECK(monodromy_profile(vplus_system(n)) == profile);
}

TEST_CASE("profile preserving covers") {
    // hypotheses of the covering lemmas hold: no nontrivial cover preserves
    // the profile
    for (int n : {5, 6, 8, 9, 11})
        CHECK(profile_preserving_covers(vplus_system(n), 4).empty());

    // two plain cusps: a double cover totally ramified over both does
    // preserve the profile
    LocalSystemOnP1 cusps;
    cusps.points.push_back({"c1", LocalMonodromyClass::full_jordan(0)});
    cusps.points.push_back({"c2", LocalMonodromyClass::full_jordan(0)});
    const auto covers = profile_preserving_covers(cusps, 2);
    REQUIRE_FALSE(covers.empty());
    CHECK(covers.front().degree == 2);
    CHECK(covers.front().profiles == std::vector<Partition>{{2}, {2}});

    CHECK_THROWS_AS(profile_preserving_covers(cusps, 1), error);
    CHECK_THROWS_AS(profile_preserving_covers(cusps, 7), error);
}
