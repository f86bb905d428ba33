#include "modwin/lcc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace modwin {

namespace {

void check_result(const LccResult& r, const Population& pop) {
    if (!is_compatible_set(r.members, pop)) throw std::logic_error(r.method + " returned an incompatible set");
}

// lexicographically smaller member list wins among equal sizes
bool better(const UserSet& a, const UserSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
}

LccResult pair_enumeration(const Population& pop, const std::string& method) {
    int n = pop.size();
    std::vector<char> mutual(std::size_t(n) * n, 0);
    std::vector<int> rep(n);
    for (int i = 0; i < n; ++i) {
        rep[i] = i;
        for (int j = 0; j < n; ++j) {
            const auto &a = pop.users[i], &b = pop.users[j];
            mutual[std::size_t(i) * n + j] = compatible(a, b.speech) && compatible(b, a.speech);
            if (j < i && rep[i] == i && a.left == b.left && a.right == b.right && a.speech == b.speech) rep[i] = j;
        }
    }
    // identical users yield identical candidate sets, so one endpoint per profile suffices
    UserSet best;
    for (int i = 0; i < n; ++i) {
        if (rep[i] != i) continue;
        for (int j = 0; j < n; ++j) {
            if (rep[j] != j) continue;
            const auto& pi = pop.users[i].speech;
            const auto& pj = pop.users[j].speech;
            if (pj < pi || (pi == pj && j < i)) continue;
            if (!mutual[std::size_t(i) * n + j]) continue;
            UserSet s;
            for (int k = 0; k < n; ++k) {
                const auto& pk = pop.users[k].speech;
                if (pk < pi || pk > pj) continue;
                if (mutual[std::size_t(k) * n + i] && mutual[std::size_t(k) * n + j]) s.push_back(k);
            }
            if (better(s, best)) best = std::move(s);
        }
    }
    return {best, int(best.size()), method};
}

}  // namespace

Rational theta_min(const Population& pop) {
    Rational m(1);
    for (auto& u : pop.users) m = std::min(m, threshold_value(u.threshold));
    return m;
}

LccResult lcc_exact(const Population& pop, const EngineCaps& caps) {
    int n = pop.size();
    if (n > caps.lcc_users || n > 62)
        throw cap_exceeded("lcc_exact: " + std::to_string(n) + " users exceeds cap " + std::to_string(caps.lcc_users));
    std::vector<std::uint64_t> compat(n, 0);
    std::vector<Rational> theta(n);
    for (int i = 0; i < n; ++i) {
        theta[i] = threshold_value(pop.users[i].threshold);
        for (int j = 0; j < n; ++j)
            if (compatible(pop.users[i], pop.users[j].speech)) compat[i] |= std::uint64_t(1) << j;
    }
    auto ok = [&](const std::vector<int>& ids) {
        std::uint64_t mask = 0;
        for (int i : ids) mask |= std::uint64_t(1) << i;
        for (int i : ids) {
            std::uint64_t others = mask & ~(std::uint64_t(1) << i);
            if (!meets_threshold(std::popcount(others & compat[i]), std::popcount(others), theta[i])) return false;
        }
        return true;
    };
    for (int k = n; k >= 1; --k) {
        std::vector<int> ids(k);
        std::iota(ids.begin(), ids.end(), 0);
        while (true) {
            if (ok(ids)) {
                LccResult r{ids, k, "brute_force"};
                check_result(r, pop);
                return r;
            }
            int p = k - 1;
            while (p >= 0 && ids[p] == n - k + p) --p;
            if (p < 0) break;
            ++ids[p];
            for (int q = p + 1; q < k; ++q) ids[q] = ids[q - 1] + 1;
        }
    }
    return {{}, 0, "brute_force"};
}

LccResult lcc_theta_one(const Population& pop) {
    for (auto& u : pop.users)
        if (!u.threshold.is_direct() || u.threshold.theta != Rational(1))
            throw std::invalid_argument("lcc_theta_one needs Direct(1) thresholds");
    auto r = pair_enumeration(pop, "theta_one");
    check_result(r, pop);
    return r;
}

LccResult mutually_compatible_core(const Population& pop) { return pair_enumeration(pop, "core"); }

Window core_window(const Population& pop) {
    if (pop.size() == 0) throw std::invalid_argument("core_window of an empty population");
    auto core = mutually_compatible_core(pop);
    Rational lo = pop.users[core.members.front()].speech, hi = lo;
    for (int i : core.members) {
        lo = std::min(lo, pop.users[i].speech);
        hi = std::max(hi, pop.users[i].speech);
    }
    return Window::closed(lo, hi);
}

namespace {

struct OneSided {
    UserSet members;
    int j = -1;
    UserSet s_star;  // j plus S
};

OneSided one_sided_search(const Population& pop) {
    int n = pop.size();
    if (n == 0) return {};
    Rational theta = threshold_value(pop.users[0].threshold);
    for (auto& u : pop.users) {
        if (u.left != pop.users[0].left) throw std::invalid_argument("one-sided algorithm needs equal left endpoints");
        if (threshold_value(u.threshold) != theta)
            throw std::invalid_argument("one-sided algorithm needs a common threshold");
    }
    OneSided best;
    for (int j = 0; j < n; ++j) {
        const auto& uj = pop.users[j];
        UserSet s, t;
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            const auto& ui = pop.users[i];
            if (ui.speech <= uj.right && ui.right >= uj.right) s.push_back(i);
            else if (ui.speech > uj.right) t.push_back(i);
        }
        std::stable_sort(t.begin(), t.end(),
                         [&](int a, int b) { return pop.users[a].speech < pop.users[b].speech; });
        long take = long(t.size());
        if (theta != Rational(0)) {
            Rational extra = Rational(long(s.size())) * (Rational(1) - theta) / theta;
            take = std::min<long>(take, extra.floor());
        }
        UserSet core = s;
        core.push_back(j);
        std::sort(core.begin(), core.end());
        UserSet w = core;
        w.insert(w.end(), t.begin(), t.begin() + take);
        std::sort(w.begin(), w.end());
        if (best.j < 0 || better(w, best.members)) best = {w, j, core};
    }
    return best;
}

Window hull(const Population& pop, const UserSet& ids) {
    Rational lo = pop.users[ids.front()].speech, hi = lo;
    for (int i : ids) {
        lo = std::min(lo, pop.users[i].speech);
        hi = std::max(hi, pop.users[i].speech);
    }
    return Window::closed(lo, hi);
}

}  // namespace

LccResult lcc_one_sided(const Population& pop) {
    auto b = one_sided_search(pop);
    LccResult r{b.members, int(b.members.size()), "one_sided"};
    check_result(r, pop);
    return r;
}

DynamicWindowPlan dynamic_window_one_sided(const Population& pop) {
    if (pop.size() == 0) throw std::invalid_argument("dynamic window of an empty population");
    auto b = one_sided_search(pop);
    return {hull(pop, b.s_star), b.s_star, hull(pop, b.members)};
}

Policy DynamicWindowPlan::policy() const {
    Advance adv{Advance::Kind::Superset, target};
    return Policy::phased({Phase{phase1, adv}, Phase{phase2, {}}});
}

Window sample_window(const Population& pop, int m, std::uint64_t seed) {
    int n = pop.size();
    if (m < 1 || m > n) throw std::invalid_argument("sample size out of range");
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    Rng rng(seed);
    for (int k = 0; k < m; ++k) std::swap(ids[k], ids[k + int(rng.below(std::uint64_t(n - k)))]);
    ids.resize(m);
    std::sort(ids.begin(), ids.end());
    Population sub;
    for (int i : ids) sub.users.push_back(pop.users[i]);
    return core_window(sub);
}

double sampling_bound(long n, long m, const Rational& theta_min, long s_opt, const Rational& beta) {
    if (theta_min <= Rational(1, 2)) throw std::invalid_argument("sampling bound needs theta_min > 1/2");
    if (beta <= Rational(0) || beta >= Rational(1)) throw std::invalid_argument("beta must lie in (0,1)");
    double x = (theta_min - Rational(1, 2)).to_double() * (double(s_opt) / double(n)) * (1.0 - beta.to_double());
    return 1.0 - double(n) * std::exp(-double(m) * x * x);
}

}  // namespace modwin
