#pragma once

// Small named graphs used across the test suites.

#include "subcount/graph.hpp"

namespace subcount::test {

inline Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::from_edges(n, std::move(e));
}

inline Graph cycle_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, std::move(e));
}

inline Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph::from_edges(n, std::move(e));
}

inline Graph empty_graph(int n) { return Graph::from_edges(n, {}); }

// center 0, leaves 1..leaves
inline Graph star_graph(int leaves) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, std::move(e));
}

inline Graph petersen_graph() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);         // outer 5-cycle
        e.emplace_back(5 + i, 5 + (i + 2) % 5); // inner pentagram
        e.emplace_back(i, 5 + i);               // spokes
    }
    return Graph::from_edges(10, std::move(e));
}

} // namespace subcount::test
