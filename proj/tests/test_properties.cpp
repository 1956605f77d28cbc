#include "doctest.h"

#include <random>

#include "k3fib/covers.hpp"
#include "k3fib/lattice.hpp"
#include "k3fib/monodromy.hpp"

using namespace k3fib;

namespace {

Lattice random_nondegenerate(std::mt19937& rng, int max_rank) {
    std::uniform_int_distribution<int> rank_dist(1, max_rank);
    std::uniform_int_distribution<int> entry(-4, 4);
    while (true) {
        const int r = rank_dist(rng);
        IntMatrix g(static_cast<size_t>(r), std::vector<Int>(static_cast<size_t>(r)));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j <= i; ++j) g[i][j] = g[j][i] = entry(rng);
        Lattice L = make_lattice("random", std::move(g));
        if (determinant(L) != 0) return L;
    }
}

Partition random_partition(std::mt19937& rng, int d) {
    std::uniform_int_distribution<int> part(1, d);
    Partition p;
    int left = d;
    while (left > 0) {
        const int x = std::min(left, part(rng));
        p.push_back(x);
        left -= x;
    }
    return canonical(p);
}

}  // namespace

TEST_CASE("determinants multiply over direct sums") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 40; ++trial) {
        const Lattice a = random_nondegenerate(rng, 4);
        const Lattice b = random_nondegenerate(rng, 4);
        CHECK(determinant(direct_sum(a, b)) == determinant(a) * determinant(b));
    }
}

TEST_CASE("discriminant group order equals |det|") {
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 40; ++trial) {
        const Lattice L = random_nondegenerate(rng, 5);
        const DiscriminantGroup g = discriminant_group(L);
        CHECK(g.order() == abs(determinant(L)));
        for (size_t i = 1; i < g.invariant_factors.size(); ++i)
            CHECK(g.invariant_factors[i] % g.invariant_factors[i - 1] == 0);
    }
}

TEST_CASE("class powers compose") {
    std::mt19937 rng(90125);
    std::uniform_int_distribution<int> num(0, 11);
    std::uniform_int_distribution<int> den(1, 12);
    std::uniform_int_distribution<long long> exp_dist(1, 9);
    for (int trial = 0; trial < 200; ++trial) {
        const LocalMonodromyClass c = LocalMonodromyClass::semisimple(
            Frac(num(rng), den(rng)), Frac(num(rng), den(rng)), Frac(num(rng), den(rng)));
        const long long a = exp_dist(rng), b = exp_dist(rng);
        CHECK(class_power(c, a * b) == class_power(class_power(c, a), b));
        CHECK(class_power(c, c.order()).is_identity());
        CHECK(c.drop() == 3 - c.fixed_dim());
    }
    for (int trial = 0; trial < 50; ++trial) {
        const LocalMonodromyClass j = LocalMonodromyClass::full_jordan(
            trial % 2 == 0 ? Frac(0) : Frac(1, 2));
        const long long a = exp_dist(rng), b = exp_dist(rng);
        CHECK(class_power(j, a * b) == class_power(class_power(j, a), b));
        CHECK(j.order() == infinite_order);
    }
}

TEST_CASE("pullback rank is even and matches the odd-part bookkeeping") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = supported_n()[static_cast<size_t>(trial) % supported_n().size()];
        const auto& zeros = allowed_zero_partitions(n);
        const Partition zero = zeros[static_cast<size_t>(trial / 9) % zeros.size()];
        const int d = partition_sum(zero);
        const int q = orbifold_signature(n).q;
        const Partition infinity = random_partition(rng, d);
        std::vector<Partition> lambda;
        int m_sum = 0;
        for (int i = 0; i < q; ++i) {
            lambda.push_back(random_partition(rng, d));
            m_sum += static_cast<int>(lambda.back().size());
        }
        const int r = static_cast<int>(infinity.size()) + static_cast<int>(zero.size()) + m_sum -
                      q * d - 2;
        if (r < 0) continue;
        const BranchData b = make_branch_data(n, infinity, zero, lambda, r);
        const int h1 = h1_rank(pullback_system(n, b));
        CHECK(h1 % 2 == 0);
        // each odd part over a 2-orbifold point contributes exactly one
        // unit of drop; even parts contribute none
        int lambda_drop = 0;
        for (const auto& p : b.part_lambda) lambda_drop += count_odd_parts(p);
        int measured = 0;
        for (const auto& pt : pullback_system(n, b).points)
            if (pt.cls == LocalMonodromyClass::semisimple(0, 0, Frac(1, 2))) measured += 1;
        CHECK(measured >= lambda_drop);  // zero point may add one more for n = 11
    }
}

TEST_CASE("witness verification rejects corrupted tuples") {
    const std::vector<Partition> types{{4}, {2, 2}, {2, 1, 1}};
    auto w = realizable_cycle_types(types, 4);
    REQUIRE(w.has_value());
    CHECK(verify_witness(*w, types));

    PermWitness broken = *w;
    std::swap(broken.factors[0][0], broken.factors[0][1]);
    CHECK_FALSE(verify_witness(broken, types));

    PermWitness wrong_order = *w;
    std::swap(wrong_order.factors[0], wrong_order.factors[1]);
    CHECK_FALSE(verify_witness(wrong_order, types));
}
