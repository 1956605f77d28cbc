#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "k3fib/errors.hpp"

namespace k3fib {

// Integer partitions, stored canonically in descending order.
using Partition = std::vector<int>;

inline Partition canonical(Partition p) {
    std::sort(p.begin(), p.end(), std::greater<int>());
    return p;
}

inline int partition_sum(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

inline bool is_canonical(const Partition& p) {
    return std::is_sorted(p.begin(), p.end(), std::greater<int>());
}

inline int count_odd_parts(const Partition& p) {
    return static_cast<int>(std::count_if(p.begin(), p.end(), [](int x) { return x % 2 != 0; }));
}

inline Partition all_ones(int d) { return Partition(static_cast<size_t>(d), 1); }

// All partitions of d, descending parts, in lexicographically decreasing
// order ([d], [d-1,1], ..., [1^d]).
inline std::vector<Partition> partitions_of(int d) {
    std::vector<Partition> out;
    if (d < 0) return out;
    if (d == 0) {
        out.push_back({});
        return out;
    }
    Partition cur;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(remaining, max_part); part >= 1; --part) {
            cur.push_back(part);
            rec(remaining - part, part);
            cur.pop_back();
        }
    };
    rec(d, d);
    return out;
}

inline std::string format_partition(const Partition& p) {
    std::ostringstream os;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) os << ',';
        os << p[i];
    }
    return os.str();
}

// Parses "4,4" or "[4,4]"; parts must be positive integers.
inline Partition parse_partition(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](char c) { return c == '[' || c == ']' || c == ' '; }),
            s.end());
    Partition p;
    if (s.empty()) fail(errc::invalid_argument, "empty partition");
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            fail(errc::invalid_argument, "bad partition part '" + tok + "'");
        }
        if (pos != tok.size() || v <= 0)
            fail(errc::invalid_argument, "bad partition part '" + tok + "'");
        p.push_back(v);
    }
    return canonical(p);
}

}  // namespace k3fib
