#pragma once

#include <cstdint>
#include <vector>

namespace rig {

// Maximum bipartite matching by augmenting paths (Kuhn). left_adj[i] lists
// the right-side ids usable by left vertex i. Returns the matching size;
// when match_of_left is given it receives, per left vertex, the matched
// right id or -1.
inline int max_bipartite_matching(const std::vector<std::vector<int>>& left_adj, int right_count,
                                  std::vector<int>* match_of_left = nullptr) {
    int nl = int(left_adj.size());
    std::vector<int> right_owner(right_count, -1);
    std::vector<char> visited(right_count, 0);

    auto augment = [&](auto&& self, int u) -> bool {
        for (int w : left_adj[u]) {
            if (visited[w]) continue;
            visited[w] = 1;
            if (right_owner[w] < 0 || self(self, right_owner[w])) {
                right_owner[w] = u;
                return true;
            }
        }
        return false;
    };

    int matched = 0;
    for (int u = 0; u < nl; ++u) {
        std::fill(visited.begin(), visited.end(), 0);
        if (augment(augment, u)) ++matched;
    }
    if (match_of_left) {
        match_of_left->assign(nl, -1);
        for (int w = 0; w < right_count; ++w)
            if (right_owner[w] >= 0) (*match_of_left)[right_owner[w]] = w;
    }
    return matched;
}

}  // namespace rig
