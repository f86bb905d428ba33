#include "modwin/competition.hpp"

#include <algorithm>

namespace modwin {

Rational CompetitionConfig::lambda(int i, int j) const {
    const auto& p = platforms.at(j);
    if (!p.lambda_per_user.empty()) return p.lambda_per_user.at(i);
    if (p.lambda) return *p.lambda;
    return users.at(i).threshold.lambda;
}

std::vector<std::string> validate(const CompetitionConfig& cfg) {
    std::vector<std::string> out;
    Population pop{cfg.users, {}};
    out = validate(pop);
    int n = cfg.num_users();
    for (int i = 0; i < n; ++i)
        if (cfg.users[i].threshold.is_direct())
            out.push_back("user " + std::to_string(i) + ": competition needs b and lambda");
    if (int(cfg.bandwidth.size()) != n) out.push_back("bandwidths must list one value per user");
    for (auto& g : cfg.bandwidth)
        if (g && *g <= Rational(0)) out.push_back("bandwidth must be positive");
    if (int(cfg.initial.size()) != n) out.push_back("initial assignment must cover every user");
    for (int j = 0; j < cfg.num_platforms(); ++j) {
        const auto& p = cfg.platforms[j];
        if (!p.lambda_per_user.empty() && int(p.lambda_per_user.size()) != n)
            out.push_back("platform " + std::to_string(j) + ": per-user lambda list has wrong length");
        for (auto& l : p.lambda_per_user)
            if (l < Rational(0) || l > Rational(1)) out.push_back("platform lambda not in [0,1]");
        if (p.lambda && (*p.lambda < Rational(0) || *p.lambda > Rational(1)))
            out.push_back("platform lambda not in [0,1]");
    }
    if (out.empty())
        for (int i = 0; i < n; ++i) {
            int a = cfg.initial[i];
            if (a == kNone) continue;
            if (a < 0 || a >= cfg.num_platforms()) out.push_back("initial platform out of range");
            else if (!cfg.eligible(i, a))
                out.push_back("user " + std::to_string(i) + " initially on a platform that bans them");
        }
    return out;
}

namespace {

void require_valid(const CompetitionConfig& cfg) {
    auto v = validate(cfg);
    if (!v.empty()) throw validation_error(v.front());
}

}  // namespace

Rational consumption_value(long long c, long long d, const std::optional<Rational>& gamma, const Rational& lambda_b,
                           bool unnormalized) {
    if (c + d == 0) return Rational(0);
    Rational pool(c + d);
    Rational consumed = gamma && *gamma < pool ? *gamma : pool;
    Rational raw = Rational(c) - lambda_b * Rational(d);
    if (unnormalized) return consumed * raw;
    return consumed / pool * raw;
}

int choose_location(const std::vector<Rational>& values, const std::vector<char>& eligible, int current) {
    int best = kNone;
    for (int j = 0; j < int(values.size()); ++j) {
        if (!eligible[j]) continue;
        if (best == kNone || values[j] > values[best]) best = j;
    }
    if (best == kNone || values[best] < Rational(0)) return kNone;
    if (current != kNone && eligible[current] && values[current] == values[best]) return current;
    return best;
}

Rational platform_value(int i, int j, const MultiState& state, const CompetitionConfig& cfg) {
    if (!cfg.eligible(i, j)) throw std::invalid_argument("user is not eligible for this platform");
    long long c = 0, d = 0;
    for (int k = 0; k < cfg.num_users(); ++k) {
        if (k == i || state[k] != j) continue;
        if (compatible(cfg.users[i], cfg.users[k].speech)) ++c;
        else ++d;
    }
    return consumption_value(c, d, cfg.bandwidth[i], cfg.lambda(i, j) * cfg.users[i].threshold.b, cfg.unnormalized);
}

MultiState multi_step(const MultiState& state, int i, const CompetitionConfig& cfg) {
    int k = cfg.num_platforms();
    std::vector<Rational> vals(k);
    std::vector<char> elig(k);
    for (int j = 0; j < k; ++j) {
        elig[j] = cfg.eligible(i, j);
        if (elig[j]) vals[j] = platform_value(i, j, state, cfg);
    }
    MultiState out = state;
    out[i] = choose_location(vals, elig, state[i]);
    return out;
}

bool multi_is_stable(const MultiState& state, const CompetitionConfig& cfg) {
    for (int i = 0; i < cfg.num_users(); ++i)
        if (multi_step(state, i, cfg)[i] != state[i]) return false;
    return true;
}

Rational multi_potential(const MultiState& state, const CompetitionConfig& cfg) {
    Rational sum(0);
    for (int i = 0; i < cfg.num_users(); ++i) {
        int j = state[i];
        if (j == kNone) continue;
        long long c = 0, d = 0;
        for (int k = 0; k < cfg.num_users(); ++k) {
            if (k == i || state[k] != j) continue;
            if (compatible(cfg.users[i], cfg.users[k].speech)) ++c;
            else ++d;
        }
        sum += Rational(c) - cfg.lambda(i, j) * cfg.users[i].threshold.b * Rational(d);
    }
    return sum;
}

std::vector<int> platform_sizes(const MultiState& state, int platforms) {
    std::vector<int> out(platforms, 0);
    for (int a : state)
        if (a != kNone) ++out[a];
    return out;
}

MultiTrace multi_simulate(const CompetitionConfig& cfg, const Schedule& schedule, long horizon) {
    require_valid(cfg);
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    MultiTrace tr;
    tr.initial = cfg.initial;
    MultiState s = cfg.initial;
    if (cfg.num_users() == 0) {
        for (long t = 1; t <= horizon; ++t) tr.steps.push_back({t, -1, kNone, kNone, s});
        return tr;
    }
    schedule.check_fair(cfg.num_users());
    ScheduleCursor cur(schedule, cfg.num_users());
    for (long t = 1; t <= horizon; ++t) {
        int i = cur.next();
        int from = s[i];
        s = multi_step(s, i, cfg);
        tr.steps.push_back({t, i, from, s[i], s});
    }
    return tr;
}

// ------------------------------------------------------------- flat engine

MultiAnalysis::MultiAnalysis(const CompetitionConfig& cfg, const EngineCaps& caps) : cfg_(cfg) {
    require_valid(cfg_);
    int n = cfg_.num_users();
    std::uint64_t base = std::uint64_t(cfg_.num_platforms()) + 1;
    std::uint64_t space = 1;
    for (int i = 0; i < n; ++i) {
        if (space > caps.quotient_states / base)
            throw cap_exceeded("multi-platform state space exceeds cap; use the quotient engine");
        space *= base;
    }
    auto encode = [base](const MultiState& s) {
        std::uint64_t c = 0;
        for (auto it = s.rbegin(); it != s.rend(); ++it) c = c * base + std::uint64_t(*it + 1);
        return c;
    };
    graph_ = std::make_unique<FairGraph>(encode(cfg_.initial), n, space,
                                         [this, encode](std::uint64_t c, int i) {
                                             return encode(multi_step(state_of(c), i, cfg_));
                                         });
}

MultiState MultiAnalysis::state(int idx) const { return state_of(graph_->code(idx)); }

MultiState MultiAnalysis::state_of(std::uint64_t code) const {
    std::uint64_t base = std::uint64_t(cfg_.num_platforms()) + 1;
    MultiState s(cfg_.num_users());
    for (auto& a : s) {
        a = int(code % base) - 1;
        code /= base;
    }
    return s;
}

MultiFairLimitReport MultiAnalysis::report(int focus) const {
    MultiFairLimitReport rep;
    rep.focus = focus;
    rep.num_fair_closed_sccs = graph_->num_fair_comps();
    for (int e : graph_->equilibria()) rep.equilibria.push_back(state(e));
    int k = cfg_.num_platforms();
    if (k == 0 || cfg_.num_users() == 0) {
        rep.per_platform_min_sizes.assign(k, 0);
        rep.witness = Schedule::scripted({}, {});
        return rep;
    }
    int best = graph_->argmin_fair([&](int i) { return platform_sizes(state(i), k)[focus]; });
    rep.per_platform_min_sizes = platform_sizes(state(best), k);
    auto w = graph_->witness(best);
    rep.witness = Schedule::scripted(std::move(w.prefix), std::move(w.cycle));
    return rep;
}

MultiFairLimitReport multi_fair_limit(const CompetitionConfig& cfg, int focus, const EngineCaps& caps) {
    return MultiAnalysis(cfg, caps).report(focus);
}

// --------------------------------------------------------- stacked configs

CompetitionConfig StackedCompetition::expand() const {
    CompetitionConfig cfg;
    cfg.platforms = platforms;
    cfg.unnormalized = unnormalized;
    for (auto& p : cfg.platforms) p.lambda_per_user.clear();
    for (std::size_t s = 0; s < stacks.size(); ++s) {
        const auto& st = stacks[s];
        std::vector<int> locs;
        for (std::size_t l = 0; l < st.initial.size(); ++l)
            for (int k = 0; k < st.initial[l]; ++k) locs.push_back(int(l) - 1);
        if (int(locs.size()) != st.count) throw validation_error("stack initial counts must sum to its count");
        for (int k = 0; k < st.count; ++k) {
            cfg.users.push_back(st.prefs);
            cfg.bandwidth.push_back(st.bandwidth);
            cfg.initial.push_back(locs[k]);
            for (std::size_t j = 0; j < platforms.size(); ++j)
                if (!platforms[j].lambda_per_user.empty())
                    cfg.platforms[j].lambda_per_user.push_back(platforms[j].lambda_per_user.at(s));
        }
    }
    for (std::size_t j = 0; j < platforms.size(); ++j)
        if (!platforms[j].lambda_per_user.empty() && cfg.platforms[j].lambda_per_user.size() != cfg.users.size())
            throw validation_error("per-stack lambda list has wrong length");
    return cfg;
}

std::vector<std::string> validate(const StackedCompetition& cfg) {
    std::vector<std::string> out;
    int L = int(cfg.platforms.size()) + 1;
    for (std::size_t s = 0; s < cfg.stacks.size(); ++s) {
        const auto& st = cfg.stacks[s];
        std::string who = "stack " + std::to_string(s);
        StackedPopulation one{{Stack{st.prefs, st.count, 0}}};
        for (auto& v : validate(one)) out.push_back(who + v.substr(7));
        if (st.prefs.threshold.is_direct()) out.push_back(who + ": competition needs b and lambda");
        if (st.bandwidth && *st.bandwidth <= Rational(0)) out.push_back(who + ": bandwidth must be positive");
        if (int(st.initial.size()) != L) {
            out.push_back(who + ": initial counts need one entry per location");
            continue;
        }
        int sum = 0;
        for (int x : st.initial) {
            if (x < 0) out.push_back(who + ": negative initial count");
            sum += x;
        }
        if (sum != st.count) out.push_back(who + ": initial counts must sum to its count");
        for (int l = 1; l < L; ++l)
            if (st.initial[l] > 0 && !cfg.platforms[l - 1].window.contains(st.prefs.speech))
                out.push_back(who + " initially on a platform that bans it");
    }
    for (std::size_t j = 0; j < cfg.platforms.size(); ++j) {
        const auto& p = cfg.platforms[j];
        if (!p.lambda_per_user.empty() && p.lambda_per_user.size() != cfg.stacks.size())
            out.push_back("platform " + std::to_string(j) + ": per-stack lambda list has wrong length");
        for (auto& l : p.lambda_per_user)
            if (l < Rational(0) || l > Rational(1)) out.push_back("platform lambda not in [0,1]");
        if (p.lambda && (*p.lambda < Rational(0) || *p.lambda > Rational(1)))
            out.push_back("platform lambda not in [0,1]");
    }
    return out;
}

MultiQuotientAnalysis::MultiQuotientAnalysis(const StackedCompetition& cfg, const EngineCaps& caps) : cfg_(cfg) {
    k_ = int(cfg_.platforms.size());
    int S = int(cfg_.stacks.size());
    int L = k_ + 1;
    auto problems = validate(cfg_);
    if (!problems.empty()) throw validation_error(problems.front());
    compat_.assign(S, std::vector<char>(S));
    elig_.assign(S, std::vector<char>(k_));
    lambda_b_.assign(S, std::vector<Rational>(k_));
    std::uint64_t space = 1;
    for (int s = 0; s < S; ++s) {
        const auto& st = cfg_.stacks[s];
        for (int t = 0; t < S; ++t) compat_[s][t] = compatible(st.prefs, cfg_.stacks[t].prefs.speech);
        for (int j = 0; j < k_; ++j) {
            const auto& p = cfg_.platforms[j];
            elig_[s][j] = p.window.contains(st.prefs.speech);
            Rational lam = !p.lambda_per_user.empty() ? p.lambda_per_user.at(s)
                           : p.lambda                 ? *p.lambda
                                                      : st.prefs.threshold.lambda;
            lambda_b_[s][j] = lam * st.prefs.threshold.b;
        }
        // compositions of count over None + eligible platforms
        std::uint64_t dense = 1;
        for (int j = 0; j < k_; ++j) dense *= std::uint64_t(st.count) + 1;
        if (dense > (std::uint64_t(1) << 26)) throw cap_exceeded("stack too large for the quotient engine");
        std::vector<std::int32_t> rank(dense, -1);
        std::vector<std::vector<int>> list;
        std::vector<int> c(L, 0);
        for (std::uint64_t code = 0; code < dense; ++code) {
            std::uint64_t x = code;
            int used = 0;
            bool ok = true;
            for (int j = 0; j < k_; ++j) {
                c[j + 1] = int(x % (std::uint64_t(st.count) + 1));
                x /= std::uint64_t(st.count) + 1;
                used += c[j + 1];
                if (c[j + 1] > 0 && !elig_[s][j]) ok = false;
            }
            if (!ok || used > st.count) continue;
            c[0] = st.count - used;
            rank[code] = std::int32_t(list.size());
            list.push_back(c);
        }
        comps_.push_back(std::move(list));
        comp_index_.push_back(std::move(rank));
        radix_.push_back(space);
        std::uint64_t r = comps_.back().size();
        if (space > caps.quotient_states / r)
            throw cap_exceeded("quotient state space exceeds cap " + std::to_string(caps.quotient_states));
        space *= r;
    }
    graph_ = std::make_unique<FairGraph>(encode(initial_counts()), S * L, space, [this](std::uint64_t code, int a) {
        auto n = apply(decode(code), a);
        return n.empty() ? FairGraph::kUnavailable : encode(n);
    });
}

std::vector<std::vector<int>> MultiQuotientAnalysis::initial_counts() const {
    std::vector<std::vector<int>> c;
    for (auto& st : cfg_.stacks) c.push_back(st.initial);
    return c;
}

std::uint64_t MultiQuotientAnalysis::encode(const std::vector<std::vector<int>>& c) const {
    std::uint64_t code = 0;
    for (std::size_t s = 0; s < c.size(); ++s) {
        std::uint64_t key = 0, mul = 1;
        std::uint64_t base = std::uint64_t(cfg_.stacks[s].count) + 1;
        for (int j = 0; j < k_; ++j) {
            key += mul * std::uint64_t(c[s][j + 1]);
            mul *= base;
        }
        code += radix_[s] * std::uint64_t(comp_index_[s][key]);
    }
    return code;
}

std::vector<std::vector<int>> MultiQuotientAnalysis::decode(std::uint64_t code) const {
    std::vector<std::vector<int>> c;
    for (std::size_t s = 0; s < cfg_.stacks.size(); ++s) {
        std::uint64_t r = comps_[s].size();
        c.push_back(comps_[s][(code / radix_[s]) % r]);
    }
    return c;
}

std::vector<std::vector<int>> MultiQuotientAnalysis::apply(const std::vector<std::vector<int>>& c, int action) const {
    int L = k_ + 1;
    int s = action / L, loc = action % L;
    if (c[s][loc] == 0) return {};
    int current = loc - 1;
    std::vector<Rational> vals(k_);
    std::vector<char> elig(k_);
    for (int j = 0; j < k_; ++j) {
        elig[j] = elig_[s][j];
        if (!elig[j]) continue;
        long long cc = 0, dd = 0;
        for (std::size_t t = 0; t < c.size(); ++t) {
            long long m = c[t][j + 1] - (int(t) == s && current == j ? 1 : 0);
            if (compat_[s][t]) cc += m;
            else dd += m;
        }
        vals[j] = consumption_value(cc, dd, cfg_.stacks[s].bandwidth, lambda_b_[s][j], cfg_.unnormalized);
    }
    int dest = choose_location(vals, elig, current);
    auto n = c;
    --n[s][loc];
    ++n[s][dest + 1];
    return n;
}

std::vector<std::vector<int>> MultiQuotientAnalysis::counts(int idx) const { return decode(graph_->code(idx)); }

std::vector<int> MultiQuotientAnalysis::sizes(int idx) const {
    std::vector<int> out(k_, 0);
    for (auto& st : counts(idx))
        for (int j = 0; j < k_; ++j) out[j] += st[j + 1];
    return out;
}

bool MultiQuotientAnalysis::stable(int idx) const {
    for (int a = 0; a < graph_->num_actions(); ++a) {
        int w = graph_->succ(idx, a);
        if (w >= 0 && w != idx) return false;
    }
    return true;
}

MultiFairLimitReport MultiQuotientAnalysis::report(int focus) const {
    MultiFairLimitReport rep;
    rep.focus = focus;
    rep.stack_level = true;
    rep.num_fair_closed_sccs = graph_->num_fair_comps();
    for (int e : graph_->equilibria()) {
        std::vector<int> flat;
        for (auto& st : counts(e)) flat.insert(flat.end(), st.begin(), st.end());
        rep.equilibria.push_back(flat);
    }
    if (k_ == 0 || cfg_.stacks.empty()) {
        rep.per_platform_min_sizes.assign(k_, 0);
        rep.witness = Schedule::scripted({}, {});
        return rep;
    }
    int best = graph_->argmin_fair([&](int i) { return sizes(i)[focus]; });
    rep.per_platform_min_sizes = sizes(best);
    auto w = graph_->witness(best);
    rep.witness = Schedule::scripted(std::move(w.prefix), std::move(w.cycle));
    return rep;
}

MultiFairLimitReport multi_fair_limit_quotient(const StackedCompetition& cfg, int focus, const EngineCaps& caps) {
    return MultiQuotientAnalysis(cfg, caps).report(focus);
}

}  // namespace modwin
