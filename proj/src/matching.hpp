#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace mvfph::detail {

// Hopcroft-Karp maximum matching on a bipartite graph given as left adjacency lists.
class HopcroftKarp {
public:
    static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();

    HopcroftKarp(std::size_t left, std::size_t right, const std::vector<std::vector<std::size_t>>& adj)
        : adj_(adj), match_left_(left, kFree), match_right_(right, kFree), dist_(left) {}

    std::size_t run() {
        std::size_t size = 0;
        while (bfs()) {
            for (std::size_t u = 0; u < match_left_.size(); ++u)
                if (match_left_[u] == kFree && dfs(u)) ++size;
        }
        return size;
    }

    const std::vector<std::size_t>& match_left() const { return match_left_; }

private:
    static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

    bool bfs() {
        std::queue<std::size_t> q;
        bool found = false;
        for (std::size_t u = 0; u < match_left_.size(); ++u) {
            if (match_left_[u] == kFree) {
                dist_[u] = 0;
                q.push(u);
            } else {
                dist_[u] = kInf;
            }
        }
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (auto v : adj_[u]) {
                const auto w = match_right_[v];
                if (w == kFree) {
                    found = true;
                } else if (dist_[w] == kInf) {
                    dist_[w] = dist_[u] + 1;
                    q.push(w);
                }
            }
        }
        return found;
    }

    bool dfs(std::size_t u) {
        for (auto v : adj_[u]) {
            const auto w = match_right_[v];
            if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
                match_left_[u] = v;
                match_right_[v] = u;
                return true;
            }
        }
        dist_[u] = kInf;
        return false;
    }

    const std::vector<std::vector<std::size_t>>& adj_;
    std::vector<std::size_t> match_left_;
    std::vector<std::size_t> match_right_;
    std::vector<std::size_t> dist_;
};

}  // namespace mvfph::detail
