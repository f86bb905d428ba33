#include "modwin/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace modwin {

bool Advance::holds(const UserSet& state) const {
    switch (kind) {
        case Kind::Always: return true;
        case Kind::Never: return false;
        case Kind::Superset: return std::includes(state.begin(), state.end(), target.begin(), target.end());
    }
    return false;
}

Policy Policy::phased(std::vector<Phase> phases) {
    if (phases.empty()) throw std::invalid_argument("phased policy needs at least one phase");
    if (phases.back().advance.kind != Advance::Kind::Never)
        throw std::invalid_argument("last phase must never advance");
    for (auto& p : phases) std::sort(p.advance.target.begin(), p.advance.target.end());
    return Policy{std::move(phases)};
}

Schedule Schedule::round_robin(std::vector<int> perm) {
    Schedule s;
    s.kind = Kind::RoundRobin;
    s.cycle = std::move(perm);
    return s;
}

Schedule Schedule::round_robin(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    return round_robin(std::move(perm));
}

Schedule Schedule::cyclic(std::vector<int> seq) {
    Schedule s;
    s.kind = Kind::Cyclic;
    s.cycle = std::move(seq);
    return s;
}

Schedule Schedule::scripted(std::vector<int> prefix, std::vector<int> cycle) {
    Schedule s;
    s.kind = Kind::Scripted;
    s.prefix = std::move(prefix);
    s.cycle = std::move(cycle);
    return s;
}

Schedule Schedule::seeded_random(std::uint64_t seed) {
    Schedule s;
    s.kind = Kind::SeededRandom;
    s.seed = seed;
    return s;
}

void Schedule::check_fair(int actors) const {
    if (kind == Kind::SeededRandom) return;
    std::vector<int> hits(actors, 0);
    for (int a : cycle) {
        if (a < 0 || a >= actors) throw std::invalid_argument("schedule names unknown actor " + std::to_string(a));
        ++hits[a];
    }
    for (int a : prefix)
        if (a < 0 || a >= actors) throw std::invalid_argument("schedule names unknown actor " + std::to_string(a));
    for (int a = 0; a < actors; ++a)
        if (hits[a] == 0) throw std::invalid_argument("schedule starves actor " + std::to_string(a));
    if (kind == Kind::RoundRobin && int(cycle.size()) != actors)
        throw std::invalid_argument("round-robin order must be a permutation");
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t x;
    do x = gen_();
    while (x >= limit);
    return x % n;
}

ScheduleCursor::ScheduleCursor(const Schedule& s, int actors)
    : s_(s), actors_(actors), in_prefix_(!s.prefix.empty()), rng_(s.seed) {}

int ScheduleCursor::next() {
    if (s_.kind == Schedule::Kind::SeededRandom) return int(rng_.below(std::uint64_t(actors_)));
    if (in_prefix_) {
        int a = s_.prefix[pos_++];
        if (pos_ == s_.prefix.size()) {
            in_prefix_ = false;
            pos_ = 0;
        }
        return a;
    }
    int a = s_.cycle[pos_];
    pos_ = (pos_ + 1) % s_.cycle.size();
    return a;
}

long ScheduleCursor::position() const {
    if (s_.kind == Schedule::Kind::SeededRandom || in_prefix_) return -1;
    return long(pos_);
}

const char* action_name(Action a) {
    switch (a) {
        case Action::Join: return "join";
        case Action::Leave: return "leave";
        case Action::Stay: return "stay";
        case Action::Banned: return "banned";
    }
    return "?";
}

UserSet eligible(const Population& pop, const Window& w) {
    UserSet out;
    for (int i = 0; i < pop.size(); ++i)
        if (w.contains(pop.users[i].speech)) out.push_back(i);
    return out;
}

namespace {

UserSet without(const UserSet& s, int i) {
    UserSet out;
    out.reserve(s.size());
    for (int x : s)
        if (x != i) out.push_back(x);
    return out;
}

UserSet with(const UserSet& s, int i) {
    UserSet out = s;
    auto it = std::lower_bound(out.begin(), out.end(), i);
    if (it == out.end() || *it != i) out.insert(it, i);
    return out;
}

bool contains(const UserSet& s, int i) { return std::binary_search(s.begin(), s.end(), i); }

UserSet restrict_to(const UserSet& s, const Population& pop, const Window& w) {
    UserSet out;
    for (int i : s)
        if (w.contains(pop.users[i].speech)) out.push_back(i);
    return out;
}

}  // namespace

UserSet step(const UserSet& state, int i, const Window& w, const Population& pop) {
    if (!w.contains(pop.users.at(i).speech)) return without(state, i);
    bool on = contains(state, i);
    bool ok = willing(i, state, pop);
    if (on && !ok) return without(state, i);
    if (!on && ok) return with(state, i);
    return state;
}

UserSet initial_state(const Population& pop, const Policy& policy) {
    return restrict_to(pop.initial_adopters, pop, policy.window(0));
}

bool is_stable(const UserSet& state, const Population& pop, const Window& w) {
    for (int i : state)
        if (!w.contains(pop.users[i].speech) || !willing(i, state, pop)) return false;
    for (int j : eligible(pop, w))
        if (!contains(state, j) && willing(j, state, pop)) return false;
    return true;
}

namespace {

struct Runner {
    const Population& pop;
    const Policy& policy;
    UserSet state;
    int phase = 0;

    // returns forced removals
    UserSet maybe_advance() {
        if (phase + 1 >= policy.num_phases() || !policy.phases[phase].advance.holds(state)) return {};
        ++phase;
        UserSet kept = restrict_to(state, pop, policy.window(phase));
        UserSet forced;
        std::set_difference(state.begin(), state.end(), kept.begin(), kept.end(), std::back_inserter(forced));
        state = std::move(kept);
        return forced;
    }

    Action act(int i) {
        const Window& w = policy.window(phase);
        bool was_on = contains(state, i);
        state = step(state, i, w, pop);
        if (!w.contains(pop.users[i].speech)) return Action::Banned;
        bool on = contains(state, i);
        if (on == was_on) return Action::Stay;
        return on ? Action::Join : Action::Leave;
    }
};

}  // namespace

Trace simulate(const Population& pop, const Policy& policy, const Schedule& schedule, long horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    Trace tr;
    Runner r{pop, policy, initial_state(pop, policy)};
    tr.initial = r.state;
    if (pop.size() == 0) {
        for (long t = 1; t <= horizon; ++t) tr.steps.push_back({t, 0, -1, Action::Stay, {}, {}});
        return tr;
    }
    schedule.check_fair(pop.size());
    ScheduleCursor cur(schedule, pop.size());
    tr.steps.reserve(std::size_t(horizon));
    for (long t = 1; t <= horizon; ++t) {
        UserSet forced = r.maybe_advance();
        int i = cur.next();
        Action a = r.act(i);
        tr.steps.push_back({t, r.phase, i, a, std::move(forced), r.state});
    }
    return tr;
}

int liminf_size(const Population& pop, const Policy& policy, const Schedule& schedule) {
    if (schedule.kind == Schedule::Kind::SeededRandom)
        throw std::invalid_argument("liminf_size needs a periodic schedule");
    if (pop.size() == 0) return 0;
    schedule.check_fair(pop.size());
    Runner r{pop, policy, initial_state(pop, policy)};
    ScheduleCursor cur(schedule, pop.size());
    for (std::size_t k = 0; k < schedule.prefix.size(); ++k) {
        r.maybe_advance();
        r.act(cur.next());
    }
    std::map<std::pair<int, UserSet>, std::size_t> seen;
    std::vector<int> cycle_min;
    while (true) {
        auto key = std::make_pair(r.phase, r.state);
        auto it = seen.find(key);
        if (it != seen.end())
            return *std::min_element(cycle_min.begin() + long(it->second), cycle_min.end());
        seen.emplace(std::move(key), cycle_min.size());
        int m = INT32_MAX;
        for (std::size_t k = 0; k < schedule.cycle.size(); ++k) {
            r.maybe_advance();
            r.act(cur.next());
            m = std::min(m, int(r.state.size()));
        }
        cycle_min.push_back(m);
    }
}

Rational potential(const UserSet& state, const Population& pop) {
    const ThresholdSpec* ref = nullptr;
    for (auto& u : pop.users) {
        if (u.threshold.is_direct()) throw std::invalid_argument("potential needs FromDisutility thresholds");
        if (!ref) ref = &u.threshold;
        else if (u.threshold.b != ref->b || u.threshold.lambda != ref->lambda)
            throw std::invalid_argument("potential needs homogeneous b and lambda");
    }
    Rational sum(0);
    for (int i : state) sum += utility(i, state, pop);
    return sum;
}

// ---------------------------------------------------------------- flat engine

FlatAnalysis::FlatAnalysis(const Population& pop, const Policy& policy, const EngineCaps& caps)
    : pop_(pop), policy_(policy) {
    require_valid(pop_);
    int n = pop_.size();
    bit_of_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        bool any = false;
        for (auto& ph : policy_.phases) any = any || ph.window.contains(pop_.users[i].speech);
        if (any) {
            bit_of_[i] = int(members_.size());
            members_.push_back(i);
        }
    }
    bits_ = int(members_.size());
    if (bits_ > caps.flat_users || bits_ > 62)
        throw cap_exceeded("state space too large (" + std::to_string(bits_) + " eligible users, cap " +
                           std::to_string(caps.flat_users) + "); use quotient engine");
    compat_.assign(n, 0);
    theta_.resize(n);
    for (int i = 0; i < n; ++i) {
        theta_[i] = threshold_value(pop_.users[i].threshold);
        for (int b = 0; b < bits_; ++b)
            if (compatible(pop_.users[i], pop_.users[members_[b]].speech)) compat_[i] |= std::uint64_t(1) << b;
    }
    for (auto& ph : policy_.phases) {
        std::uint64_t e = 0, tgt = 0;
        bool ok = true;
        for (int b = 0; b < bits_; ++b)
            if (ph.window.contains(pop_.users[members_[b]].speech)) e |= std::uint64_t(1) << b;
        for (int u : ph.advance.target) {
            if (u < 0 || u >= n) throw std::invalid_argument("advance target out of range");
            if (bit_of_[u] < 0) ok = false;
            else tgt |= std::uint64_t(1) << bit_of_[u];
        }
        elig_.push_back(e);
        target_.push_back(tgt);
        target_ok_.push_back(ok);
    }
    std::uint64_t init = 0;
    for (int u : pop_.initial_adopters)
        if (bit_of_[u] >= 0) init |= std::uint64_t(1) << bit_of_[u];
    init &= elig_[0];
    std::uint64_t space = std::uint64_t(policy_.num_phases()) << bits_;
    graph_ = std::make_unique<FairGraph>(init, n, space,
                                         [this](std::uint64_t c, int a) { return transition(c, a); });
}

std::uint64_t FlatAnalysis::transition(std::uint64_t code, int user) const {
    std::uint64_t mask_all = (std::uint64_t(1) << bits_) - 1;
    int ph = int(code >> bits_);
    std::uint64_t s = code & mask_all;
    if (ph + 1 < policy_.num_phases()) {
        const auto& adv = policy_.phases[ph].advance;
        bool go = adv.kind == Advance::Kind::Always ||
                  (adv.kind == Advance::Kind::Superset && target_ok_[ph] && (s & target_[ph]) == target_[ph]);
        if (go) {
            ++ph;
            s &= elig_[ph];
        }
    }
    int b = bit_of_[user];
    if (b >= 0) {
        std::uint64_t me = std::uint64_t(1) << b;
        if (!(elig_[ph] & me)) {
            s &= ~me;
        } else {
            std::uint64_t others = s & ~me;
            bool ok = meets_threshold(std::popcount(others & compat_[user]), std::popcount(others), theta_[user]);
            if (ok) s |= me;
            else s &= ~me;
        }
    }
    return (std::uint64_t(ph) << bits_) | s;
}

UserSet FlatAnalysis::state(int idx) const {
    std::uint64_t s = graph_->code(idx) & ((std::uint64_t(1) << bits_) - 1);
    UserSet out;
    for (int b = 0; b < bits_; ++b)
        if (s >> b & 1) out.push_back(members_[b]);
    return out;
}

int FlatAnalysis::phase(int idx) const { return int(graph_->code(idx) >> bits_); }

int FlatAnalysis::size(int idx) const {
    return std::popcount(graph_->code(idx) & ((std::uint64_t(1) << bits_) - 1));
}

FairLimitReport FlatAnalysis::report_at(int idx) const {
    FairLimitReport rep;
    rep.num_fair_closed_sccs = graph_->num_fair_comps();
    for (int e : graph_->equilibria()) rep.equilibria.push_back(state(e));
    if (idx < 0) throw std::logic_error("no fair-closed SCC");
    rep.min_size = size(idx);
    auto w = graph_->witness(idx);
    rep.witness = Schedule::scripted(std::move(w.prefix), std::move(w.cycle));
    return rep;
}

FairLimitReport FlatAnalysis::report() const {
    if (pop_.size() == 0) {
        FairLimitReport rep;
        rep.num_fair_closed_sccs = 1;
        rep.equilibria.push_back({});
        rep.witness = Schedule::scripted({}, {});
        return rep;
    }
    return report_at(argmin([this](int i) { return size(i); }));
}

FairLimitReport fair_limit_min(const Population& pop, const Window& w, const EngineCaps& caps) {
    return fair_limit_min(pop, Policy::fixed(w), caps);
}

FairLimitReport fair_limit_min(const Population& pop, const Policy& policy, const EngineCaps& caps) {
    return FlatAnalysis(pop, policy, caps).report();
}

// ----------------------------------------------------------- quotient engine

QuotientAnalysis::QuotientAnalysis(const StackedPopulation& pop, const Window& w, const EngineCaps& caps)
    : pop_(pop), window_(w) {
    auto v = validate(pop_);
    if (!v.empty()) throw validation_error(v.front());
    int k = int(pop_.stacks.size());
    compat_.assign(k, std::vector<char>(k, 0));
    for (int s = 0; s < k; ++s) {
        theta_.push_back(threshold_value(pop_.stacks[s].prefs.threshold));
        elig_.push_back(w.contains(pop_.stacks[s].prefs.speech));
        for (int t = 0; t < k; ++t) compat_[s][t] = compatible(pop_.stacks[s].prefs, pop_.stacks[t].prefs.speech);
    }
    std::uint64_t space = 1;
    for (int s = 0; s < k; ++s) {
        radix_.push_back(space);
        std::uint64_t r = elig_[s] ? std::uint64_t(pop_.stacks[s].count) + 1 : 1;
        if (space > caps.quotient_states / r)
            throw cap_exceeded("quotient state space exceeds cap " + std::to_string(caps.quotient_states));
        space *= r;
    }
    graph_ = std::make_unique<FairGraph>(encode(initial_counts()), 2 * k, space, [this](std::uint64_t c, int a) {
        auto cur = decode(c);
        auto nxt = apply(cur, a);
        if (nxt.empty() && !cur.empty()) return FairGraph::kUnavailable;
        return encode(nxt);
    });
}

std::vector<int> QuotientAnalysis::initial_counts() const {
    std::vector<int> c;
    for (std::size_t s = 0; s < pop_.stacks.size(); ++s) c.push_back(elig_[s] ? pop_.stacks[s].initial_on : 0);
    return c;
}

std::uint64_t QuotientAnalysis::encode(const std::vector<int>& c) const {
    std::uint64_t code = 0;
    for (std::size_t s = 0; s < c.size(); ++s) code += radix_[s] * std::uint64_t(c[s]);
    return code;
}

std::vector<int> QuotientAnalysis::decode(std::uint64_t code) const {
    std::vector<int> c(pop_.stacks.size(), 0);
    for (std::size_t s = 0; s < c.size(); ++s) {
        if (!elig_[s]) continue;
        std::uint64_t r = std::uint64_t(pop_.stacks[s].count) + 1;
        c[s] = int((code / radix_[s]) % r);
    }
    return c;
}

bool QuotientAnalysis::stack_willing(const std::vector<int>& c, int s, bool on) const {
    long long total = -(on ? 1 : 0), compat = -(on ? 1 : 0);
    for (std::size_t t = 0; t < c.size(); ++t) {
        total += c[t];
        if (compat_[s][t]) compat += c[t];
    }
    return meets_threshold(compat, total, theta_[s]);
}

// empty result marks an unavailable action
std::vector<int> QuotientAnalysis::apply(const std::vector<int>& c, int action) const {
    int s = action / 2;
    bool on = action % 2 == 0;
    if (on ? c[s] == 0 : c[s] == pop_.stacks[s].count) return {};
    std::vector<int> n = c;
    if (!elig_[s]) {
        if (on) n[s] = 0;
        return n;
    }
    bool ok = stack_willing(c, s, on);
    if (on && !ok) --n[s];
    if (!on && ok) ++n[s];
    return n;
}

std::vector<int> QuotientAnalysis::counts(int idx) const { return decode(graph_->code(idx)); }

int QuotientAnalysis::size(int idx) const {
    int n = 0;
    for (int x : counts(idx)) n += x;
    return n;
}

bool QuotientAnalysis::stable(int idx) const {
    for (int a = 0; a < graph_->num_actions(); ++a) {
        int w = graph_->succ(idx, a);
        if (w >= 0 && w != idx) return false;
    }
    return true;
}

FairLimitReport QuotientAnalysis::report_at(int idx) const {
    FairLimitReport rep;
    rep.stack_level = true;
    rep.num_fair_closed_sccs = graph_->num_fair_comps();
    for (int e : graph_->equilibria()) rep.equilibria.push_back(counts(e));
    if (idx < 0) throw std::logic_error("no fair-closed SCC");
    rep.min_size = size(idx);
    auto w = graph_->witness(idx);
    rep.witness = Schedule::scripted(std::move(w.prefix), std::move(w.cycle));
    return rep;
}

FairLimitReport QuotientAnalysis::report() const {
    if (pop_.stacks.empty()) {
        FairLimitReport rep;
        rep.stack_level = true;
        rep.num_fair_closed_sccs = 1;
        rep.equilibria.push_back({});
        rep.witness = Schedule::scripted({}, {});
        return rep;
    }
    return report_at(argmin([this](int i) { return size(i); }));
}

FairLimitReport fair_limit_min_quotient(const StackedPopulation& pop, const Window& w, const EngineCaps& caps) {
    return QuotientAnalysis(pop, w, caps).report();
}

int quotient_witness_liminf(const QuotientAnalysis& qa, const Schedule& witness) {
    auto c = qa.initial_counts();
    auto sum = [](const std::vector<int>& v) {
        int n = 0;
        for (int x : v) n += x;
        return n;
    };
    auto act = [&](int a) {
        auto n = qa.apply(c, a);
        if (n.empty()) throw std::logic_error("witness schedules an unavailable stack action");
        c = std::move(n);
    };
    for (int a : witness.prefix) act(a);
    auto start = c;
    int m = sum(c);
    for (int a : witness.cycle) {
        act(a);
        m = std::min(m, sum(c));
    }
    if (c != start) throw std::logic_error("witness cycle does not return to its start");
    return m;
}

}  // namespace modwin
