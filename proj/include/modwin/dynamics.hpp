#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "modwin/core.hpp"
#include "modwin/fair_graph.hpp"

namespace modwin {

struct Advance {
    enum class Kind { Superset, Always, Never };
    Kind kind = Kind::Never;
    UserSet target;  // Superset only
    bool holds(const UserSet& state) const;
};

struct Phase {
    Window window;
    Advance advance;
};

// NoModeration and Static are single-phase policies.
struct Policy {
    std::vector<Phase> phases;

    static Policy none() { return fixed(Window::all()); }
    static Policy fixed(Window w) { return Policy{{Phase{w, {}}}}; }
    static Policy phased(std::vector<Phase> phases);
    const Window& window(int phase) const { return phases.at(phase).window; }
    int num_phases() const { return int(phases.size()); }
};

struct Schedule {
    enum class Kind { RoundRobin, Cyclic, Scripted, SeededRandom };
    Kind kind = Kind::Cyclic;
    std::vector<int> prefix;  // Scripted only
    std::vector<int> cycle;   // RoundRobin permutation, Cyclic sequence, Scripted cycle
    std::uint64_t seed = 0;

    static Schedule round_robin(std::vector<int> perm);
    static Schedule round_robin(int n);
    static Schedule cyclic(std::vector<int> seq);
    static Schedule scripted(std::vector<int> prefix, std::vector<int> cycle);
    static Schedule seeded_random(std::uint64_t seed);

    // throws std::invalid_argument unless every actor in [0,actors) is
    // scheduled infinitely often
    void check_fair(int actors) const;
};

// Deterministic uniform draws on top of mt19937_64 (the std distributions are
// implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::uint64_t below(std::uint64_t n);
    std::uint64_t next() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

class ScheduleCursor {
public:
    ScheduleCursor(const Schedule& s, int actors);
    int next();
    // position inside the periodic part, or -1 while in a prefix / random
    long position() const;

private:
    const Schedule& s_;
    int actors_;
    std::size_t pos_ = 0;
    bool in_prefix_;
    Rng rng_;
};

enum class Action { Join, Leave, Stay, Banned };
const char* action_name(Action a);

struct TraceStep {
    long t;
    int phase;
    int actor;
    Action action;
    UserSet forced_removed;  // banned on entering this step's phase
    UserSet state;
};

struct Trace {
    UserSet initial;
    std::vector<TraceStep> steps;
};

UserSet eligible(const Population& pop, const Window& w);
UserSet step(const UserSet& state, int i, const Window& w, const Population& pop);
UserSet initial_state(const Population& pop, const Policy& policy);
bool is_stable(const UserSet& state, const Population& pop, const Window& w);
Trace simulate(const Population& pop, const Policy& policy, const Schedule& schedule, long horizon);

// Exact liminf of the platform size under a periodic schedule (RoundRobin,
// Cyclic, Scripted): runs until (state, phase, cycle position) repeats.
int liminf_size(const Population& pop, const Policy& policy, const Schedule& schedule);

Rational potential(const UserSet& state, const Population& pop);

struct FairLimitReport {
    int min_size = 0;
    Schedule witness;
    int num_fair_closed_sccs = 0;
    // user sets for the flat engine, per-stack on-counts for the quotient engine
    std::vector<std::vector<int>> equilibria;
    bool stack_level = false;
};

// Phase-augmented state graph over subsets of the users eligible in some phase.
class FlatAnalysis {
public:
    FlatAnalysis(const Population& pop, const Policy& policy, const EngineCaps& caps = EngineCaps::from_env());

    const FairGraph& graph() const { return *graph_; }
    UserSet state(int idx) const;
    int phase(int idx) const;
    int size(int idx) const;
    FairLimitReport report() const;
    // report minimizing an arbitrary objective over fair-closed states
    template <class F>
    int argmin(F&& f) const {
        return graph_->argmin_fair([&](int i) { return f(i); });
    }
    FairLimitReport report_at(int idx) const;

private:
    std::uint64_t transition(std::uint64_t code, int user) const;

    Population pop_;
    Policy policy_;
    std::vector<int> members_;      // compressed bit -> user id
    std::vector<int> bit_of_;       // user id -> compressed bit or -1
    std::vector<std::uint64_t> compat_;  // per user, compressed mask of liked speech
    std::vector<Rational> theta_;
    std::vector<std::uint64_t> elig_;    // per phase
    std::vector<std::uint64_t> target_;  // per phase, Superset targets
    std::vector<char> target_ok_;
    int bits_ = 0;
    std::unique_ptr<FairGraph> graph_;
};

FairLimitReport fair_limit_min(const Population& pop, const Window& w,
                               const EngineCaps& caps = EngineCaps::from_env());
FairLimitReport fair_limit_min(const Population& pop, const Policy& policy,
                               const EngineCaps& caps = EngineCaps::from_env());

// Quotient engine: state = on-count per stack; actions 2s (an on-member of
// stack s acts) and 2s+1 (an off-member acts).
class QuotientAnalysis {
public:
    QuotientAnalysis(const StackedPopulation& pop, const Window& w,
                     const EngineCaps& caps = EngineCaps::from_env());

    const FairGraph& graph() const { return *graph_; }
    std::vector<int> counts(int idx) const;
    int size(int idx) const;
    bool stable(int idx) const;
    FairLimitReport report() const;
    FairLimitReport report_at(int idx) const;
    template <class F>
    int argmin(F&& f) const {
        return graph_->argmin_fair([&](int i) { return f(i); });
    }
    // applies one stack-level action to a count vector (quotient dynamics)
    std::vector<int> apply(const std::vector<int>& counts, int action) const;
    std::vector<int> initial_counts() const;

private:
    std::uint64_t encode(const std::vector<int>& c) const;
    std::vector<int> decode(std::uint64_t code) const;
    bool stack_willing(const std::vector<int>& c, int s, bool on) const;

    StackedPopulation pop_;
    Window window_;
    std::vector<std::vector<char>> compat_;
    std::vector<Rational> theta_;
    std::vector<char> elig_;
    std::vector<std::uint64_t> radix_;
    std::unique_ptr<FairGraph> graph_;
};

FairLimitReport fair_limit_min_quotient(const StackedPopulation& pop, const Window& w,
                                        const EngineCaps& caps = EngineCaps::from_env());

// stack-level replay: sizes along prefix followed by `cycles` repetitions
int quotient_witness_liminf(const QuotientAnalysis& qa, const Schedule& witness);

}  // namespace modwin
