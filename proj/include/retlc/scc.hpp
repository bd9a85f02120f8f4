#pragma once

#include <utility>
#include <vector>

namespace retlc::detail {

// Iterative Tarjan. Returns (component count, node -> component id); component
// ids are in reverse topological order of the condensation.
inline std::pair<int, std::vector<int>> tarjan_scc(int n, const std::vector<std::vector<int>>& adj) {
    std::vector<int> comp(n, -1), low(n, 0), num(n, -1), stack;
    std::vector<std::pair<int, std::size_t>> call;
    int counter = 0, comps = 0;
    std::vector<char> on_stack(n, 0);

    for (int root = 0; root < n; ++root) {
        if (num[root] != -1) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& [v, ei] = call.back();
            if (ei == 0) {
                num[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            if (ei < adj[v].size()) {
                int w = adj[v][ei++];
                if (num[w] == -1) {
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], num[w]);
                }
            } else {
                if (low[v] == num[v]) {
                    int c = comps++;
                    for (;;) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = c;
                        if (w == v) break;
                    }
                }
                call.pop_back();
                if (!call.empty()) {
                    int parent = call.back().first;
                    low[parent] = std::min(low[parent], low[v]);
                }
            }
        }
    }
    return {comps, comp};
}

} // namespace retlc::detail
