#include "modwin/fair_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <unordered_map>

namespace modwin {

EngineCaps EngineCaps::from_env() {
    EngineCaps caps;
    if (const char* v = std::getenv("MODWIN_STATE_CAP")) {
        char* end = nullptr;
        unsigned long long cap = std::strtoull(v, &end, 10);
        if (end != v && cap > 0) {
            caps.quotient_states = cap;
            int bits = 0;
            while (bits < 62 && (std::uint64_t(1) << (bits + 1)) <= cap) ++bits;
            caps.flat_users = bits;
        }
    }
    return caps;
}

FairGraph::FairGraph(std::uint64_t initial, int actions, std::uint64_t code_space, const SuccFn& fn)
    : actions_(actions) {
    constexpr std::uint64_t kDenseLimit = std::uint64_t(1) << 26;
    std::vector<std::int32_t> dense;
    std::unordered_map<std::uint64_t, std::int32_t> sparse;
    bool use_dense = code_space <= kDenseLimit;
    if (use_dense) dense.assign(code_space, -1);

    auto lookup = [&](std::uint64_t c) -> std::int32_t& {
        if (use_dense) return dense[c];
        auto [it, inserted] = sparse.try_emplace(c, -1);
        return it->second;
    };

    lookup(initial) = 0;
    codes_.push_back(initial);
    for (std::size_t head = 0; head < codes_.size(); ++head) {
        std::uint64_t c = codes_[head];
        for (int a = 0; a < actions_; ++a) {
            std::uint64_t nc = fn(c, a);
            if (nc == kUnavailable) {
                succ_.push_back(-1);
                continue;
            }
            auto& slot = lookup(nc);
            if (slot < 0) {
                slot = std::int32_t(codes_.size());
                codes_.push_back(nc);
            }
            succ_.push_back(slot);
        }
    }
    tarjan();
    mark_fair();
}

void FairGraph::tarjan() {
    int n = num_states();
    comp_.assign(n, -1);
    std::vector<std::int32_t> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    struct Frame {
        int v;
        int next_action;
    };
    std::vector<Frame> call;
    int counter = 0;
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            int v = f.v;
            if (f.next_action < actions_) {
                int w = succ(v, f.next_action++);
                if (w < 0) continue;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp_[w] = num_comps_;
                } while (w != v);
                ++num_comps_;
            }
            call.pop_back();
            if (!call.empty()) {
                int u = call.back().v;
                low[u] = std::min(low[u], low[v]);
            }
        }
    }
}

void FairGraph::mark_fair() {
    // per component and action: 1 = available somewhere, 2 = also stays inside
    std::vector<char> seen(std::size_t(num_comps_) * actions_, 0);
    for (int v = 0; v < num_states(); ++v) {
        int c = comp_[v];
        for (int a = 0; a < actions_; ++a) {
            int w = succ(v, a);
            if (w < 0) continue;
            char& s = seen[std::size_t(c) * actions_ + a];
            if (comp_[w] == c) s = 2;
            else if (s == 0) s = 1;
        }
    }
    fair_.assign(num_comps_, 1);
    for (int c = 0; c < num_comps_; ++c)
        for (int a = 0; a < actions_; ++a)
            if (seen[std::size_t(c) * actions_ + a] == 1) fair_[c] = 0;
}

int FairGraph::num_fair_comps() const {
    return int(std::count(fair_.begin(), fair_.end(), char(1)));
}

std::vector<int> FairGraph::fair_states() const {
    std::vector<int> out;
    for (int i = 0; i < num_states(); ++i)
        if (state_fair(i)) out.push_back(i);
    return out;
}

std::vector<int> FairGraph::equilibria() const {
    std::vector<int> out;
    for (int v = 0; v < num_states(); ++v) {
        bool fixed = true;
        for (int a = 0; a < actions_ && fixed; ++a) {
            int w = succ(v, a);
            if (w >= 0 && w != v) fixed = false;
        }
        if (fixed) out.push_back(v);
    }
    return out;
}

std::vector<int> FairGraph::bfs_path(int from, int to, int restrict_comp) const {
    if (from == to) return {};
    std::vector<std::int32_t> parent(num_states(), -1);
    std::vector<std::int32_t> via(num_states(), -1);
    std::deque<int> q{from};
    parent[from] = from;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int a = 0; a < actions_; ++a) {
            int w = succ(v, a);
            if (w < 0 || parent[w] >= 0) continue;
            if (restrict_comp >= 0 && comp_[w] != restrict_comp) continue;
            parent[w] = v;
            via[w] = a;
            if (w == to) {
                std::vector<int> path;
                for (int x = to; x != from; x = parent[x]) path.push_back(via[x]);
                std::reverse(path.begin(), path.end());
                return path;
            }
            q.push_back(w);
        }
    }
    throw std::logic_error("no path in transition graph");
}

FairGraph::Witness FairGraph::witness(int target) const {
    Witness w;
    w.prefix = bfs_path(0, target, -1);
    int c = comp_[target];
    // one in-component occurrence of every action available in the component
    std::vector<int> where(actions_, -1);
    for (int v = 0; v < num_states(); ++v) {
        if (comp_[v] != c) continue;
        for (int a = 0; a < actions_; ++a) {
            int s = succ(v, a);
            if (where[a] < 0 && s >= 0 && comp_[s] == c) where[a] = v;
        }
    }
    int cur = target;
    for (int a = 0; a < actions_; ++a) {
        if (where[a] < 0) continue;
        auto p = bfs_path(cur, where[a], c);
        w.cycle.insert(w.cycle.end(), p.begin(), p.end());
        w.cycle.push_back(a);
        cur = succ(where[a], a);
    }
    auto back = bfs_path(cur, target, c);
    w.cycle.insert(w.cycle.end(), back.begin(), back.end());
    return w;
}

}  // namespace modwin
