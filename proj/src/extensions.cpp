#include "modwin/extensions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "modwin/parallel.hpp"

namespace modwin {

std::vector<UserPrefs> adversary_grid(const Population& pop) {
    std::vector<Rational> ends;
    std::set<Rational> thetas{Rational(0), Rational(1)};
    for (auto& u : pop.users) {
        ends.push_back(u.left);
        ends.push_back(u.right);
        thetas.insert(threshold_value(u.threshold));
    }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    if (ends.empty()) ends.push_back(Rational(0));
    std::vector<Rational> pts{ends.front() - Rational(1)};
    for (std::size_t i = 0; i < ends.size(); ++i) {
        pts.push_back(ends[i]);
        if (i + 1 < ends.size()) pts.push_back((ends[i] + ends[i + 1]) / Rational(2));
    }
    pts.push_back(ends.back() + Rational(1));
    Rational lo = pts.front(), hi = pts.back();
    std::vector<UserPrefs> grid;
    for (auto& p : pts)
        for (auto& t : thetas) {
            grid.push_back({lo, hi, p, ThresholdSpec::direct(t)});
            grid.push_back({p, p, p, ThresholdSpec::direct(t)});
        }
    return grid;
}

namespace {

template <class F>
void for_each_combination(int n, int r, F&& f) {
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    if (r > n) return;
    while (true) {
        f(idx);
        int p = r - 1;
        while (p >= 0 && idx[p] == n - r + p) --p;
        if (p < 0) return;
        ++idx[p];
        for (int q = p + 1; q < r; ++q) idx[q] = idx[q - 1] + 1;
    }
}

// multisets of size r from n items, non-decreasing index vectors
template <class F>
void for_each_multiset(int n, int r, F&& f) {
    if (r == 0) {
        f(std::vector<int>{});
        return;
    }
    if (n == 0) return;
    std::vector<int> idx(r, 0);
    while (true) {
        f(idx);
        int p = r - 1;
        while (p >= 0 && idx[p] == n - 1) --p;
        if (p < 0) return;
        ++idx[p];
        for (int q = p + 1; q < r; ++q) idx[q] = idx[p];
    }
}

}  // namespace

std::vector<Shock> shock_space(const Population& pop, int k, const std::vector<UserPrefs>& grid) {
    if (k < 0) throw std::invalid_argument("k must be non-negative");
    std::vector<Shock> out;
    int n = pop.size();
    for (int r = 0; r <= std::min(k, n); ++r)
        for_each_combination(n, r, [&](const std::vector<int>& rem) {
            for (int a = 0; a + r <= k; ++a)
                for_each_multiset(int(grid.size()), a, [&](const std::vector<int>& add) {
                    Shock s;
                    s.removed.assign(rem.begin(), rem.end());
                    for (int g : add) s.added.push_back(grid[g]);
                    out.push_back(std::move(s));
                });
        });
    return out;
}

Population apply_shock(const Population& pop, const Shock& shock) {
    Population out;
    std::vector<int> new_id(pop.size(), -1);
    for (int i = 0; i < pop.size(); ++i) {
        if (std::binary_search(shock.removed.begin(), shock.removed.end(), i)) continue;
        new_id[i] = out.size();
        out.users.push_back(pop.users[i]);
    }
    for (int a : pop.initial_adopters)
        if (new_id[a] >= 0) out.initial_adopters.push_back(new_id[a]);
    for (auto& u : shock.added) out.users.push_back(u);
    return out;
}

namespace {

// Two shocks with equal keys give shocked populations whose eligible users
// have identical compatibility structure, thresholds and starting positions.
using ShockKey = std::vector<std::string>;

ShockKey shock_key(const Population& pop, const Shock& s, const Window& w) {
    std::string base;
    for (int r : s.removed) base += std::to_string(r) + ",";
    ShockKey key{base};
    std::vector<std::string> profiles;
    for (std::size_t a = 0; a < s.added.size(); ++a) {
        const auto& u = s.added[a];
        std::string p = threshold_value(u.threshold).str() + ":";
        for (int i = 0; i < pop.size(); ++i) {
            if (!w.contains(pop.users[i].speech)) continue;
            p += compatible(u, pop.users[i].speech) ? '1' : '0';
            p += compatible(pop.users[i], u.speech) ? '1' : '0';
        }
        profiles.push_back(p);
    }
    // relations among the added users, order-independent for |added| <= 2
    std::sort(profiles.begin(), profiles.end());
    key.insert(key.end(), profiles.begin(), profiles.end());
    std::multiset<std::string> rel;
    for (std::size_t a = 0; a < s.added.size(); ++a)
        for (std::size_t b = 0; b < s.added.size(); ++b)
            if (a != b) {
                std::string pa = threshold_value(s.added[a].threshold).str();
                std::string pb = threshold_value(s.added[b].threshold).str();
                rel.insert(pa + ">" + pb + (compatible(s.added[a], s.added[b].speech) ? "1" : "0"));
            }
    key.insert(key.end(), rel.begin(), rel.end());
    return key;
}

}  // namespace

RobustReport robust_size(const Population& pop, const Window& w, int k, unsigned jobs, const EngineCaps& caps) {
    auto grid = adversary_grid(pop);
    // banned additions are inert, so only grid points inside the window matter
    std::vector<UserPrefs> live;
    for (auto& g : grid)
        if (w.contains(g.speech)) live.push_back(g);
    auto shocks = shock_space(pop, k, live);
    std::map<ShockKey, std::size_t> uniq;
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < shocks.size(); ++i) {
        auto key = k <= 2 ? shock_key(pop, shocks[i], w) : ShockKey{std::to_string(i)};
        if (uniq.emplace(std::move(key), i).second) reps.push_back(i);
    }
    auto sizes = parallel_map<int>(reps.size(), jobs, [&](std::size_t r) {
        return fair_limit_min(apply_shock(pop, shocks[reps[r]]), w, caps).min_size;
    });
    RobustReport rep;
    rep.shocks_considered = shocks.size();
    rep.shocks_evaluated = reps.size();
    std::size_t best = 0;
    for (std::size_t r = 1; r < reps.size(); ++r)
        if (sizes[r] < sizes[best]) best = r;
    rep.robust_size = sizes[best];
    rep.worst = shocks[reps[best]];
    return rep;
}

int robust_trim_count(const Rational& theta, int k) {
    if (theta <= Rational(0)) throw std::invalid_argument("theta must be positive");
    Rational f = std::max((Rational(1) - theta) / theta, Rational(1));
    return int((Rational(k) * f).ceil());
}

long FreqPopulation::total() const {
    long f = 0;
    for (auto& u : users) f += u.f;
    return f;
}

Population expand_frequencies(const FreqPopulation& fp) {
    long f = fp.total();
    if (f < 2) throw std::invalid_argument("total frequency must be at least 2");
    Population pop;
    for (std::size_t j = 0; j < fp.users.size(); ++j) {
        const auto& u = fp.users[j];
        if (u.f < 1) throw std::invalid_argument("frequencies must be positive integers");
        Rational th = threshold_value(u.prefs.threshold) + Rational(u.f - 1, f - 1);
        if (th > Rational(1)) throw std::invalid_argument("frequency too dominant for reduction");
        bool adopter = std::binary_search(fp.initial_adopters.begin(), fp.initial_adopters.end(), int(j));
        for (int c = 0; c < u.f; ++c) {
            if (adopter) pop.initial_adopters.push_back(pop.size());
            UserPrefs copy = u.prefs;
            copy.threshold = ThresholdSpec::direct(th);
            pop.users.push_back(copy);
        }
    }
    return pop;
}

long lcc_variable_frequency_oracle(const FreqPopulation& fp) {
    int n = int(fp.users.size());
    if (n > 4) throw std::invalid_argument("oracle scale exceeded: n > 4");
    for (auto& u : fp.users)
        if (u.f > 3 || u.f < 1) throw std::invalid_argument("oracle scale exceeded: f outside 1..3");
    long f = fp.total();
    if (f < 2) return f;
    std::vector<int> cap(n, 0);
    long best = 0;
    while (true) {
        long volume = 0;
        for (int c : cap) volume += c;
        bool ok = volume > 0;
        for (int j = 0; j < n && ok && volume > 1; ++j) {
            if (cap[j] == 0) continue;
            long liked = cap[j] - 1;
            for (int k = 0; k < n; ++k)
                if (k != j && compatible(fp.users[j].prefs, fp.users[k].prefs.speech)) liked += cap[k];
            // compatible share of the other volume-1 units, net of the
            // population-level self share, must reach theta_j
            Rational share = Rational(liked, volume - 1) - Rational(fp.users[j].f - 1, f - 1);
            ok = share >= threshold_value(fp.users[j].prefs.threshold);
        }
        if (ok) best = std::max(best, volume);
        int p = 0;
        while (p < n && cap[p] == fp.users[p].f) cap[p++] = 0;
        if (p == n) break;
        ++cap[p];
    }
    return best;
}

}  // namespace modwin
