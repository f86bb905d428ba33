#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace modwin {

struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EngineCaps {
    int flat_users = 15;
    int lcc_users = 20;
    std::uint64_t quotient_states = std::uint64_t(1) << 24;
    // MODWIN_STATE_CAP overrides the defaults when set
    static EngineCaps from_env();
};

// Reachable part of a deterministic labelled transition system, with its
// strongly connected components and the fair-closed ones among them.
// A fair-closed SCC lets every action that is available somewhere inside it
// be taken at least once without leaving it.
class FairGraph {
public:
    static constexpr std::uint64_t kUnavailable = ~std::uint64_t(0);
    using SuccFn = std::function<std::uint64_t(std::uint64_t code, int action)>;

    FairGraph(std::uint64_t initial, int actions, std::uint64_t code_space, const SuccFn& succ);

    int num_states() const { return int(codes_.size()); }
    int num_actions() const { return actions_; }
    std::uint64_t code(int idx) const { return codes_[idx]; }
    int succ(int idx, int a) const { return succ_[std::size_t(idx) * actions_ + a]; }
    int comp(int idx) const { return comp_[idx]; }
    int num_comps() const { return num_comps_; }
    bool comp_fair(int c) const { return fair_[c]; }
    bool state_fair(int idx) const { return fair_[comp_[idx]]; }
    int num_fair_comps() const;
    std::vector<int> fair_states() const;

    // argmin of f over states in fair-closed SCCs (first index on ties); -1 if none
    template <class F>
    int argmin_fair(F&& f) const {
        int best = -1;
        for (int i = 0; i < num_states(); ++i) {
            if (!state_fair(i)) continue;
            if (best < 0 || f(i) < f(best)) best = i;
        }
        return best;
    }

    // states whose SCC is a fair-closed singleton with only self loops
    std::vector<int> equilibria() const;

    // prefix reaches `target`, the cycle returns to it after taking every
    // action available inside its SCC
    struct Witness {
        std::vector<int> prefix, cycle;
    };
    Witness witness(int target) const;

private:
    void tarjan();
    void mark_fair();
    std::vector<int> bfs_path(int from, int to, int restrict_comp) const;

    int actions_;
    std::vector<std::uint64_t> codes_;
    std::vector<std::int32_t> succ_;
    std::vector<std::int32_t> comp_;
    std::vector<char> fair_;
    int num_comps_ = 0;
};

}  // namespace modwin
