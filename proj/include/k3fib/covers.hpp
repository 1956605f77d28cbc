#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "k3fib/errors.hpp"
#include "k3fib/tables.hpp"
#include "k3fib/partitions.hpp"

// Branch-data combinatorics for generalized functional invariants: the
// Hurwitz identity, constrained enumeration against the allowed
// zero-profiles, and Riemann-existence realizability via search for
// permutation tuples with prescribed cycle types.

namespace k3fib {

// ---------------------------------------------------------------------------
// Branch data

struct BranchData {
    int n = 0;
    int degree = 1;
    Partition part_infinity{1};
    Partition part_zero{1};
    std::vector<Partition> part_lambda{};
    int r_extra = 0;

    int k() const { return static_cast<int>(part_infinity.size()); }
    int l() const { return static_cast<int>(part_zero.size()); }
    int q() const { return static_cast<int>(part_lambda.size()); }
    int m_total() const {
        int m = 0;
        for (const auto& p : part_lambda) m += static_cast<int>(p.size());
        return m;
    }
    int m_odd() const {
        int m = 0;
        for (const auto& p : part_lambda) m += count_odd_parts(p);
        return m;
    }
    bool lambda_all_unramified() const {
        for (const auto& p : part_lambda)
            for (int z : p)
                if (z != 1) return false;
        return true;
    }

    auto key() const {
        return std::tie(n, degree, part_zero, part_infinity, part_lambda, r_extra);
    }
    bool operator==(const BranchData& o) const { return key() == o.key(); }
    bool operator<(const BranchData& o) const { return key() < o.key(); }
};

// k + l + m_1 + ... + m_q - q d - r - 2; zero exactly when the source
// curve has genus 0.
inline int hurwitz_defect(const BranchData& b) {
    return b.k() + b.l() + b.m_total() - b.q() * b.degree - b.r_extra - 2;
}

inline BranchData make_branch_data(int n, Partition infinity, Partition zero,
                                   std::vector<Partition> lambda, int r_extra) {
    BranchData b;
    b.n = n;
    b.part_infinity = canonical(std::move(infinity));
    b.part_zero = canonical(std::move(zero));
    b.part_lambda = std::move(lambda);
    for (auto& p : b.part_lambda) p = canonical(std::move(p));
    b.r_extra = r_extra;
    if (b.part_infinity.empty() || b.part_zero.empty())
        fail(errc::invalid_argument, "branch data: partitions must be non-empty");
    b.degree = partition_sum(b.part_infinity);
    if (partition_sum(b.part_zero) != b.degree)
        fail(errc::invalid_argument, "branch data: zero profile does not sum to the degree");
    for (const auto& p : b.part_lambda)
        if (partition_sum(p) != b.degree)
            fail(errc::invalid_argument, "branch data: lambda profile does not sum to the degree");
    if (b.r_extra < 0) fail(errc::invalid_argument, "branch data: r must be >= 0");
    if (is_supported_n(n)) {
        const int q = orbifold_signature(n).q;
        if (b.q() != q)
            fail(errc::invalid_argument, "branch data: n = " + std::to_string(n) + " requires " +
                                             std::to_string(q) + " lambda profiles, got " +
                                             std::to_string(b.q()));
    }
    // parity sanity: every partition of d has #odd parts = d (mod 2)
    if (hurwitz_defect(b) == 0 && (b.m_odd() - b.q() * b.degree) % 2 != 0)
        fail(errc::internal_inconsistency, "branch data: odd-part parity violated");
    return b;
}

inline BranchData identity_branch_data(int n) {
    require_supported_n(n, "identity_branch_data");
    const int q = orbifold_signature(n).q;
    return make_branch_data(n, {1}, {1}, std::vector<Partition>(static_cast<size_t>(q), {1}), 0);
}

// ---------------------------------------------------------------------------
// Enumeration of admissible branch data

struct EnumerateOptions {
    bool require_smooth = false;        // force all lambda profiles to [1^d]
    std::optional<int> r_max{};         // cap on extra simple branch points
    bool dedup_lambda_unordered = false;  // quotient by permutations of the lambda slots
};

// All data for one allowed zero profile; the degree is the profile sum
// and r is forced by the Hurwitz identity (negative r means no cover and
// the combination is dropped).
inline std::vector<BranchData> enumerate_for_zero_profile(int n, const Partition& zero,
                                                          const EnumerateOptions& opts = {}) {
    require_supported_n(n, "enumerate_for_zero_profile");
    if (!is_allowed_zero_partition(n, zero))
        fail(errc::not_allowed_partition, "enumerate_for_zero_profile: [" +
                                              format_partition(zero) + "] is not allowed for n = " +
                                              std::to_string(n));
    const int q = orbifold_signature(n).q;
    const int d = partition_sum(zero);
    const std::vector<Partition> all = partitions_of(d);
    const std::vector<Partition> lambda_choices =
        opts.require_smooth ? std::vector<Partition>{all_ones(d)} : all;
    std::vector<BranchData> out;
    for (const Partition& infinity : all) {
        // iterate q-tuples of lambda profiles
        std::vector<size_t> idx(static_cast<size_t>(q), 0);
        while (true) {
            std::vector<Partition> lambda;
            lambda.reserve(static_cast<size_t>(q));
            int m_sum = 0;
            for (int i = 0; i < q; ++i) {
                lambda.push_back(lambda_choices[idx[static_cast<size_t>(i)]]);
                m_sum += static_cast<int>(lambda.back().size());
            }
            const int r = static_cast<int>(infinity.size()) + static_cast<int>(zero.size()) +
                          m_sum - q * d - 2;
            if (r >= 0 && (!opts.r_max || r <= *opts.r_max))
                out.push_back(make_branch_data(n, infinity, zero, lambda, r));
            // advance the tuple
            int pos = q - 1;
            while (pos >= 0 && ++idx[static_cast<size_t>(pos)] == lambda_choices.size()) {
                idx[static_cast<size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return out;
}

// All branch data of degree <= d_max whose zero profile is an allowed
// partition (the degree is its sum), with r forced by the Hurwitz
// identity. Deterministic lexicographic order, duplicate-free.
inline std::vector<BranchData> enumerate_branch_data(int n, int d_max,
                                                     EnumerateOptions opts = {}) {
    require_supported_n(n, "enumerate_branch_data");
    if (d_max < 1) fail(errc::invalid_argument, "enumerate_branch_data: d_max must be >= 1");
    std::vector<BranchData> out;
    for (const Partition& zero : allowed_zero_partitions(n)) {
        if (partition_sum(zero) > d_max) continue;
        const auto part = enumerate_for_zero_profile(n, zero, opts);
        out.insert(out.end(), part.begin(), part.end());
    }
    if (opts.dedup_lambda_unordered) {
        // canonical representative of each lambda-permutation class: the
        // datum whose lambda profiles are already sorted
        std::erase_if(out, [](const BranchData& b) {
            return !std::is_sorted(b.part_lambda.begin(), b.part_lambda.end());
        });
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Permutation machinery

using Perm = std::vector<int>;  // images of 0..d-1

inline Perm identity_perm(int d) {
    Perm p(static_cast<size_t>(d));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// (a * b)(i) = b[a[i]]: apply a first, then b.
inline Perm compose(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = b[static_cast<size_t>(a[i])];
    return r;
}

inline Perm perm_inverse(const Perm& a) {
    Perm r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[static_cast<size_t>(a[i])] = static_cast<int>(i);
    return r;
}

inline bool is_identity_perm(const Perm& a) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != static_cast<int>(i)) return false;
    return true;
}

inline Partition cycle_type(const Perm& a) {
    const int d = static_cast<int>(a.size());
    std::vector<bool> seen(static_cast<size_t>(d), false);
    Partition type;
    for (int i = 0; i < d; ++i) {
        if (seen[static_cast<size_t>(i)]) continue;
        int len = 0, j = i;
        while (!seen[static_cast<size_t>(j)]) {
            seen[static_cast<size_t>(j)] = true;
            j = a[static_cast<size_t>(j)];
            ++len;
        }
        type.push_back(len);
    }
    return canonical(type);
}

// Cayley length: minimal number of transpositions expressing a.
inline int transposition_length(const Perm& a) {
    return static_cast<int>(a.size()) - static_cast<int>(cycle_type(a).size());
}

inline int type_length(const Partition& type, int d) {
    return d - static_cast<int>(type.size());
}

// The canonical permutation of a cycle type: consecutive blocks
// (0 1 .. x1-1)(x1 ..)...
inline Perm canonical_perm_of_type(const Partition& type, int d) {
    Perm p = identity_perm(d);
    int start = 0;
    for (int len : type) {
        for (int i = 0; i < len; ++i)
            p[static_cast<size_t>(start + i)] = start + (i + 1) % len;
        start += len;
    }
    return p;
}

namespace detail {

// All elements of the conjugacy class with the given cycle type, memoized.
inline const std::vector<Perm>& conjugacy_class(const Partition& type, int d) {
    static std::map<std::pair<int, Partition>, std::vector<Perm>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(d, type);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Perm> cls;
    Perm p = identity_perm(d);
    do {
        if (cycle_type(p) == type) cls.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return cache.emplace(std::move(key), std::move(cls)).first->second;
}

struct OrbitTracker {
    std::vector<int> parent;

    explicit OrbitTracker(int d) : parent(static_cast<size_t>(d)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
    void absorb(const Perm& p) {
        for (size_t i = 0; i < p.size(); ++i)
            if (p[i] != static_cast<int>(i)) unite(static_cast<int>(i), p[i]);
    }
    int components() {
        int c = 0;
        for (size_t i = 0; i < parent.size(); ++i)
            if (find(static_cast<int>(i)) == static_cast<int>(i)) ++c;
        return c;
    }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Riemann existence: witnesses

struct PermWitness {
    int degree = 1;
    // One permutation per prescribed cycle type, in the order the types
    // were given; product (left to right) is the identity and the
    // generated group is transitive.
    std::vector<Perm> factors;
};

inline bool verify_witness(const PermWitness& w, const std::vector<Partition>& types) {
    if (w.factors.size() != types.size()) return false;
    Perm prod = identity_perm(w.degree);
    detail::OrbitTracker orbits(w.degree);
    for (size_t i = 0; i < types.size(); ++i) {
        const Perm& f = w.factors[i];
        if (static_cast<int>(f.size()) != w.degree) return false;
        if (cycle_type(f) != canonical(types[i])) return false;
        prod = compose(prod, f);
        orbits.absorb(f);
    }
    return is_identity_perm(prod) && orbits.components() == 1;
}

namespace detail {

struct TupleSearch {
    int d;
    std::vector<Partition> types;           // nontrivial types, search order
    std::vector<Perm> chosen;
    std::vector<int> suffix_length;         // sum of type lengths from position i on

    bool feasible(const Perm& partial, OrbitTracker orbits, size_t next) {
        const Perm needed = perm_inverse(partial);
        const int ln = transposition_length(needed);
        const int capacity = next < types.size() ? suffix_length[next] : 0;
        if (ln > capacity) return false;
        if ((capacity - ln) % 2 != 0) return false;
        // cut-and-join bound: writing `needed` with the remaining length
        // budget while also connecting the orbit components requires
        // capacity >= l(needed) + 2 (components - 1), where components are
        // counted after merging along the cycles of `needed`
        for (size_t i = 0; i < needed.size(); ++i)
            if (needed[i] != static_cast<int>(i)) orbits.unite(static_cast<int>(i), needed[i]);
        return 2 * (orbits.components() - 1) <= capacity - ln;
    }

    bool dfs(size_t pos, const Perm& partial, OrbitTracker orbits) {
        if (pos == types.size()) {
            return is_identity_perm(partial) && orbits.components() == 1;
        }
        if (pos + 1 == types.size()) {
            // final factor is determined by the partial product
            const Perm last = perm_inverse(partial);
            if (cycle_type(last) != types[pos]) return false;
            OrbitTracker o = orbits;
            o.absorb(last);
            if (o.components() != 1) return false;
            chosen.push_back(last);
            return true;
        }
        // the whole tuple may be conjugated freely, so the first factor can
        // be pinned to the canonical representative of its class
        const std::vector<Perm> first_only =
            pos == 0 ? std::vector<Perm>{canonical_perm_of_type(types[0], d)} : std::vector<Perm>{};
        const std::vector<Perm>& pool = pos == 0 ? first_only : conjugacy_class(types[pos], d);
        for (const Perm& f : pool) {
            Perm next = compose(partial, f);
            OrbitTracker o = orbits;
            o.absorb(f);
            if (!feasible(next, o, pos + 1)) continue;
            chosen.push_back(f);
            if (dfs(pos + 1, next, o)) return true;
            chosen.pop_back();
        }
        return false;
    }
};

}  // namespace detail

inline constexpr int kRealizabilityDegreeBound = 8;

// Searches for permutations with the prescribed cycle types whose product
// is the identity and which generate a transitive subgroup of S_d.
inline std::optional<PermWitness> realizable_cycle_types(const std::vector<Partition>& types_in,
                                                         int d) {
    if (d < 1) fail(errc::invalid_argument, "realizable_cycle_types: d must be >= 1");
    if (d > kRealizabilityDegreeBound)
        fail(errc::degree_too_large, "realizable_cycle_types: degree " + std::to_string(d) +
                                         " exceeds the search bound " +
                                         std::to_string(kRealizabilityDegreeBound));
    std::vector<Partition> types;
    types.reserve(types_in.size());
    for (const Partition& t : types_in) {
        Partition c = canonical(t);
        if (partition_sum(c) != d)
            fail(errc::invalid_argument, "realizable_cycle_types: type [" + format_partition(c) +
                                             "] is not a partition of " + std::to_string(d));
        types.push_back(std::move(c));
    }

    // memoize on the unordered multiset of nontrivial types
    std::vector<size_t> nontrivial;
    for (size_t i = 0; i < types.size(); ++i)
        if (type_length(types[i], d) > 0) nontrivial.push_back(i);

    if (nontrivial.empty()) {
        if (d != 1) return std::nullopt;  // identities alone are never transitive past S_1
        PermWitness w;
        w.degree = 1;
        w.factors.assign(types.size(), identity_perm(1));
        return w;
    }

    std::vector<Partition> key;
    for (size_t i : nontrivial) key.push_back(types[i]);
    std::sort(key.begin(), key.end());

    static std::map<std::pair<int, std::vector<Partition>>, std::optional<std::vector<Perm>>> cache;
    static std::mutex mu;
    std::optional<std::vector<Perm>> sorted_solution;
    bool have_cached = false;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({d, key});
        if (it != cache.end()) {
            sorted_solution = it->second;
            have_cached = true;
        }
    }
    if (!have_cached) {
        // search with factors in sorted-key order, the largest class last
        // (it is fully determined by the others)
        std::vector<Partition> order = key;
        std::sort(order.begin(), order.end(), [&](const Partition& a, const Partition& b) {
            const size_t ca = detail::conjugacy_class(a, d).size();
            const size_t cb = detail::conjugacy_class(b, d).size();
            return std::tie(ca, a) < std::tie(cb, b);
        });
        detail::TupleSearch search;
        search.d = d;
        search.types = order;
        search.suffix_length.assign(order.size() + 1, 0);
        for (size_t i = order.size(); i-- > 0;)
            search.suffix_length[i] =
                search.suffix_length[i + 1] + type_length(order[i], d);
        std::optional<std::vector<Perm>> found;
        detail::OrbitTracker orbits(d);
        if (search.dfs(0, identity_perm(d), orbits)) {
            // restore sorted-key order by braid moves: moving a factor left
            // past its neighbour conjugates the neighbour, preserving both
            // the product and all cycle types
            std::vector<Perm> tuple = search.chosen;
            std::vector<Partition> cur = order;
            for (size_t target = 0; target < key.size(); ++target) {
                size_t at = target;
                while (cur[at] != key[target]) ++at;
                while (at > target) {
                    // swap positions at-1, at: (a, b) -> (b', a) with b' = a b a^-1
                    Perm a = tuple[at - 1], b = tuple[at];
                    tuple[at - 1] = compose(compose(a, b), perm_inverse(a));
                    tuple[at] = a;
                    std::swap(cur[at - 1], cur[at]);
                    --at;
                }
            }
            found = tuple;
        }
        std::lock_guard<std::mutex> lock(mu);
        cache[{d, key}] = found;
        sorted_solution = found;
    }

    if (!sorted_solution) return std::nullopt;

    // distribute the sorted-order solution back onto the requested order
    PermWitness w;
    w.degree = d;
    w.factors.assign(types.size(), identity_perm(d));
    std::vector<Perm> tuple = *sorted_solution;
    std::vector<Partition> cur = key;
    // braid the tuple into the order the nontrivial types were requested in
    std::vector<Partition> want;
    for (size_t i : nontrivial) want.push_back(types[i]);
    for (size_t target = 0; target < want.size(); ++target) {
        size_t at = target;
        while (cur[at] != want[target]) ++at;
        while (at > target) {
            Perm a = tuple[at - 1], b = tuple[at];
            tuple[at - 1] = compose(compose(a, b), perm_inverse(a));
            tuple[at] = a;
            std::swap(cur[at - 1], cur[at]);
            --at;
        }
    }
    // interleave with the forced identity factors; the product of the
    // nontrivial factors is the identity, so insertion points are free
    for (size_t i = 0; i < nontrivial.size(); ++i) w.factors[nontrivial[i]] = tuple[i];
    return w;
}

// Cycle types of a branch datum, in witness order: infinity, zero,
// lambda_1..lambda_q, then r simple transpositions.
inline std::vector<Partition> witness_types(const BranchData& b) {
    std::vector<Partition> types;
    types.push_back(b.part_infinity);
    types.push_back(b.part_zero);
    for (const auto& p : b.part_lambda) types.push_back(p);
    if (b.r_extra > 0 && b.degree < 2)
        return types;  // caller rejects: no transpositions exist in S_1
    Partition transposition{2};
    for (int i = 0; i < b.degree - 2; ++i) transposition.push_back(1);
    for (int i = 0; i < b.r_extra; ++i) types.push_back(transposition);
    return types;
}

// Riemann existence for the datum: permutations matching all ramification
// profiles (extra ramification as simple transpositions) with identity
// product and transitive action.
inline std::optional<PermWitness> realizable(const BranchData& b) {
    if (hurwitz_defect(b) != 0)
        fail(errc::non_zero_defect, "realizable: branch datum has nonzero Hurwitz defect");
    if (b.degree > kRealizabilityDegreeBound)
        fail(errc::degree_too_large, "realizable: degree " + std::to_string(b.degree) +
                                         " exceeds the search bound");
    if (b.r_extra > 0 && b.degree < 2) return std::nullopt;
    return realizable_cycle_types(witness_types(b), b.degree);
}

}  // namespace k3fib
