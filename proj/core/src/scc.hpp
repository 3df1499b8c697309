#ifndef SOFIC_SRC_SCC_HPP
#define SOFIC_SRC_SCC_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

namespace sofic::detail {

// Iterative Tarjan. Fills scc_of with component ids (numbered in completion
// order, so ids are a reverse topological order) and returns the count.
inline std::size_t strongly_connected(const std::vector<std::vector<std::size_t>>& succ,
                                      std::vector<std::size_t>& scc_of) {
    const std::size_t n = succ.size();
    std::vector<int> index(n, -1), lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    scc_of.assign(n, 0);
    int next = 0;
    std::size_t scc_count = 0;

    struct frame {
        std::size_t v, child;
    };
    std::vector<frame> frames;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        frames.push_back({root, 0});
        index[root] = lowlink[root] = next++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, child] = frames.back();
            if (child < succ[v].size()) {
                std::size_t w = succ[v][child++];
                if (index[w] == -1) {
                    index[w] = lowlink[w] = next++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
            } else {
                if (lowlink[v] == index[v]) {
                    while (true) {
                        std::size_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        scc_of[w] = scc_count;
                        if (w == v) break;
                    }
                    ++scc_count;
                }
                std::size_t done = v;
                frames.pop_back();
                if (!frames.empty())
                    lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[done]);
            }
        }
    }
    return scc_count;
}

} // namespace sofic::detail

#endif
