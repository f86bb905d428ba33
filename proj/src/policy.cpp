#include "modwin/policy.hpp"

#include <algorithm>
#include <set>

#include "modwin/parallel.hpp"

namespace modwin {

unsigned default_jobs() {
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : h;
}

namespace {

std::vector<Window> runs(std::vector<Rational> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Window> out;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a; b < pts.size(); ++b) out.push_back(Window::closed(pts[a], pts[b]));
    out.push_back(Window::none());
    return out;
}

// width for tie-breaking; empty is narrowest
bool narrower_or_left(const Window& a, const Window& b) {
    if (a.empty != b.empty) return a.empty;
    if (a.empty) return false;
    Rational wa = *a.hi - *a.lo, wb = *b.hi - *b.lo;
    if (wa != wb) return wa < wb;
    return *a.lo < *b.lo;
}

}  // namespace

std::vector<Window> candidate_windows(const Population& pop) {
    std::vector<Rational> pts;
    for (auto& u : pop.users) pts.push_back(u.speech);
    return runs(pts);
}

std::vector<Window> candidate_windows(const StackedPopulation& pop) {
    std::vector<Rational> pts;
    for (auto& s : pop.stacks) pts.push_back(s.prefs.speech);
    return runs(pts);
}

WindowSearchReport pick_best(std::vector<std::pair<Window, Rational>> per) {
    if (per.empty()) throw std::invalid_argument("no candidate windows");
    std::size_t best = 0;
    for (std::size_t i = 1; i < per.size(); ++i) {
        if (per[i].second > per[best].second ||
            (per[i].second == per[best].second && narrower_or_left(per[i].first, per[best].first)))
            best = i;
    }
    WindowSearchReport r;
    r.best_window = per[best].first;
    r.objective_value = per[best].second;
    r.per_candidate = std::move(per);
    return r;
}

namespace {

template <class Pop, class Eval>
WindowSearchReport search(const Pop& pop, unsigned jobs, Eval eval) {
    auto cands = candidate_windows(pop);
    auto vals = parallel_map<Rational>(cands.size(), jobs, [&](std::size_t i) { return eval(cands[i]); });
    std::vector<std::pair<Window, Rational>> per;
    for (std::size_t i = 0; i < cands.size(); ++i) per.emplace_back(cands[i], vals[i]);
    return pick_best(std::move(per));
}

}  // namespace

WindowSearchReport best_guaranteed_window(const Population& pop, unsigned jobs, const EngineCaps& caps) {
    return search(pop, jobs, [&](const Window& w) { return Rational(fair_limit_min(pop, w, caps).min_size); });
}

WindowSearchReport best_guaranteed_window(const StackedPopulation& pop, unsigned jobs, const EngineCaps& caps) {
    return search(pop, jobs,
                  [&](const Window& w) { return Rational(fair_limit_min_quotient(pop, w, caps).min_size); });
}

Rational platform_utility(const UserSet& state, const IdeologicalPlatform& platform, const Population& pop) {
    Rational v(0);
    for (int i : state) v += platform.interval.contains(pop.users.at(i).speech) ? Rational(1) : -platform.d;
    return v;
}

Rational ideological_value(const Population& pop, const Window& w, const IdeologicalPlatform& platform,
                           const EngineCaps& caps) {
    FlatAnalysis fa(pop, Policy::fixed(w), caps);
    auto val = [&](int i) { return platform_utility(fa.state(i), platform, pop); };
    int best = fa.argmin(val);
    return val(best);
}

Rational ideological_value(const StackedPopulation& pop, const Window& w, const IdeologicalPlatform& platform,
                           const EngineCaps& caps) {
    QuotientAnalysis qa(pop, w, caps);
    std::vector<Rational> per;
    for (auto& s : pop.stacks) per.push_back(platform.interval.contains(s.prefs.speech) ? Rational(1) : -platform.d);
    auto val = [&](int i) {
        auto c = qa.counts(i);
        Rational v(0);
        for (std::size_t s = 0; s < c.size(); ++s) v += per[s] * Rational(c[s]);
        return v;
    };
    return val(qa.argmin(val));
}

WindowSearchReport best_ideological_window(const Population& pop, const IdeologicalPlatform& platform,
                                           unsigned jobs, const EngineCaps& caps) {
    return search(pop, jobs, [&](const Window& w) { return ideological_value(pop, w, platform, caps); });
}

WindowSearchReport best_ideological_window(const StackedPopulation& pop, const IdeologicalPlatform& platform,
                                           unsigned jobs, const EngineCaps& caps) {
    return search(pop, jobs, [&](const Window& w) { return ideological_value(pop, w, platform, caps); });
}

}  // namespace modwin
