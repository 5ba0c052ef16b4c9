#pragma once

// Labelled count tables indexed by vertex count n and edge count q,
// 0 <= q <= C(n,2). Counts are exact integers; JSON serialization keeps them
// as decimal strings so tables from different producers are byte-diffable.

#include "planarcount/rational.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace planarcount {

struct CountTable {
    std::string kind;                 // "g", "c", "b", "d"
    int nmax = 0;
    std::vector<std::vector<Int>> v;  // v[n][q]

    // Graph kinds live on 0 <= q <= C(n,2); networks ("d", n counting the
    // internal vertices) reach q = 3n+1.
    static int max_q(const std::string& kind, int n) {
        return kind == "d" ? 3 * n + 1 : n * (n - 1) / 2;
    }

    explicit CountTable(std::string kind_ = "g", int nmax_ = 0) : kind(std::move(kind_)), nmax(nmax_) {
        v.resize(nmax + 1);
        for (int n = 0; n <= nmax; ++n) v[n].resize(max_q(kind, n) + 1);
    }

    Int total(int n) const {
        Int s = 0;
        for (const Int& x : v[n]) s += x;
        return s;
    }

    bool operator==(const CountTable& o) const { return kind == o.kind && nmax == o.nmax && v == o.v; }
};

inline nlohmann::json to_json(const CountTable& t) {
    nlohmann::json entries = nlohmann::json::array();
    for (int n = 0; n <= t.nmax; ++n)
        for (int q = 0; q < (int)t.v[n].size(); ++q)
            entries.push_back({{"n", n}, {"q", q}, {"count", t.v[n][q].str()}});
    nlohmann::json totals = nlohmann::json::array();
    for (int n = 0; n <= t.nmax; ++n)
        totals.push_back({{"n", n}, {"count", t.total(n).str()}});
    return nlohmann::json{{"kind", t.kind}, {"nmax", t.nmax}, {"entries", entries}, {"totals", totals}};
}

} // namespace planarcount
