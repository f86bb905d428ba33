#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "modwin/core.hpp"
#include "modwin/dynamics.hpp"
#include "modwin/fair_graph.hpp"

namespace modwin {

constexpr int kNone = -1;

struct Platform {
    Window window;
    std::optional<Rational> lambda;       // uniform lambda_j
    std::vector<Rational> lambda_per_user;  // overrides the uniform value when non-empty
};

// Users carry FromDisutility thresholds; b_i comes from there and lambda_{i,j}
// from the platform (falling back to the user's own lambda).
struct CompetitionConfig {
    std::vector<UserPrefs> users;
    std::vector<std::optional<Rational>> bandwidth;  // nullopt = unlimited
    std::vector<Platform> platforms;
    std::vector<int> initial;  // platform index or kNone
    bool unnormalized = false;

    int num_users() const { return int(users.size()); }
    int num_platforms() const { return int(platforms.size()); }
    Rational lambda(int i, int j) const;
    bool eligible(int i, int j) const { return platforms[j].window.contains(users[i].speech); }
};

using MultiState = std::vector<int>;  // per user: platform index or kNone

std::vector<std::string> validate(const CompetitionConfig& cfg);

// value from consuming `compat` liked and `incompat` disliked items
Rational consumption_value(long long compat, long long incompat, const std::optional<Rational>& gamma,
                           const Rational& lambda_b, bool unnormalized);
// any platform beats None, then the current location, then the lowest index;
// values[j] is ignored where eligible[j] is false
int choose_location(const std::vector<Rational>& values, const std::vector<char>& eligible, int current);

Rational platform_value(int i, int j, const MultiState& state, const CompetitionConfig& cfg);
MultiState multi_step(const MultiState& state, int i, const CompetitionConfig& cfg);
bool multi_is_stable(const MultiState& state, const CompetitionConfig& cfg);
Rational multi_potential(const MultiState& state, const CompetitionConfig& cfg);
std::vector<int> platform_sizes(const MultiState& state, int platforms);

struct MultiTraceStep {
    long t;
    int actor;
    int from, to;
    MultiState state;
};

struct MultiTrace {
    MultiState initial;
    std::vector<MultiTraceStep> steps;
};

MultiTrace multi_simulate(const CompetitionConfig& cfg, const Schedule& schedule, long horizon);

struct MultiFairLimitReport {
    int focus = 0;
    std::vector<int> per_platform_min_sizes;
    std::vector<std::vector<int>> equilibria;  // assignments, or per-stack location counts
    Schedule witness;
    int num_fair_closed_sccs = 0;
    bool stack_level = false;
};

class MultiAnalysis {
public:
    MultiAnalysis(const CompetitionConfig& cfg, const EngineCaps& caps = EngineCaps::from_env());
    const FairGraph& graph() const { return *graph_; }
    MultiState state(int idx) const;
    MultiFairLimitReport report(int focus = 0) const;

private:
    MultiState state_of(std::uint64_t code) const;

    CompetitionConfig cfg_;
    std::unique_ptr<FairGraph> graph_;
};

MultiFairLimitReport multi_fair_limit(const CompetitionConfig& cfg, int focus = 0,
                                      const EngineCaps& caps = EngineCaps::from_env());

struct CompetitionStack {
    UserPrefs prefs;
    int count = 1;
    std::optional<Rational> bandwidth;
    std::vector<int> initial;  // size platforms+1: [None, platform 0, platform 1, ...]
};

struct StackedCompetition {
    std::vector<CompetitionStack> stacks;
    std::vector<Platform> platforms;  // lambda_per_user is indexed by stack here
    bool unnormalized = false;
    CompetitionConfig expand() const;
};

std::vector<std::string> validate(const StackedCompetition& cfg);

// Quotient engine: per stack, the number of members at each location.
// Action s*(k+1)+l lets a member of stack s sitting at location l act
// (l = 0 is None, l = j+1 is platform j).
class MultiQuotientAnalysis {
public:
    MultiQuotientAnalysis(const StackedCompetition& cfg, const EngineCaps& caps = EngineCaps::from_env());
    const FairGraph& graph() const { return *graph_; }
    std::vector<std::vector<int>> counts(int idx) const;
    std::vector<int> sizes(int idx) const;
    bool stable(int idx) const;
    MultiFairLimitReport report(int focus = 0) const;
    std::vector<std::vector<int>> apply(const std::vector<std::vector<int>>& c, int action) const;
    std::vector<std::vector<int>> initial_counts() const;
    int locations() const { return k_ + 1; }

private:
    std::uint64_t encode(const std::vector<std::vector<int>>& c) const;
    std::vector<std::vector<int>> decode(std::uint64_t code) const;

    StackedCompetition cfg_;
    int k_ = 0;
    std::vector<std::vector<char>> compat_;
    std::vector<std::vector<char>> elig_;
    std::vector<std::vector<Rational>> lambda_b_;
    std::vector<std::vector<std::vector<int>>> comps_;     // per stack: list of compositions
    std::vector<std::vector<std::int32_t>> comp_index_;    // per stack: dense rank table
    std::vector<std::uint64_t> radix_;
    std::unique_ptr<FairGraph> graph_;
};

MultiFairLimitReport multi_fair_limit_quotient(const StackedCompetition& cfg, int focus = 0,
                                               const EngineCaps& caps = EngineCaps::from_env());

}  // namespace modwin
