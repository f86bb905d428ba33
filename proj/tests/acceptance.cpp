// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "helpers.hpp"
#include "modwin/extensions.hpp"
#include "modwin/io.hpp"
#include "modwin/lcc.hpp"
#include "modwin/policy.hpp"
#include "modwin/scenarios.hpp"

using namespace modwin;
namespace sc = modwin::scenarios;
using testing::direct;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "failed: " << what << "; ";
        pass = pass && ok;
    }
};

using Criterion = std::function<void(Outcome&)>;

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

const std::vector<Rational> kHighThetas{Rational(3, 5), Rational(2, 3), Rational(3, 4), Rational(4, 5), Rational(1)};

bool subset(const UserSet& a, const UserSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

void c1(Outcome& o) {
    auto pop = sc::five_user();
    auto l = lcc_exact(pop);
    auto f = fair_limit_min(pop, Window::closed(2, 5));
    o.require(l.members == UserSet{0, 1, 2}, "lcc members {0,1,2}");
    o.require(f.min_size == 3 && f.min_size == l.size, "fair limit on [2,5] equals LCC size 3");
    o.detail << "lcc={0,1,2}, fair_limit[2,5]=" << f.min_size;
}

void c2(Outcome& o) {
    Rng rng(2024);
    int agree = 0;
    for (int t = 0; t < 300; ++t) {
        auto pop = testing::random_population(rng, 1 + int(rng.below(10)), {Rational(1)});
        agree += lcc_theta_one(pop).size == lcc_exact(pop).size;
    }
    o.require(agree == 300, "theta-one equals brute force");
    o.detail << agree << "/300 agree";
}

void c3(Outcome& o) {
    Rng rng(33);
    int violations = 0, core_miss = 0;
    for (int t = 0; t < 200; ++t) {
        auto pop = testing::random_population(rng, 2 + int(rng.below(11)), kHighThetas);
        auto core = mutually_compatible_core(pop);
        FlatAnalysis fa(pop, Policy::fixed(core_window(pop)));
        int fair = fa.report().min_size;
        Rational bound = (Rational(2) * theta_min(pop) - Rational(1)) * Rational(lcc_exact(pop).size);
        if (Rational(fair) < bound) ++violations;
        for (int s = 0; s < fa.graph().num_states(); ++s)
            if (fa.graph().state_fair(s) && !subset(core.members, fa.state(s))) {
                ++core_miss;
                break;
            }
    }
    o.require(violations == 0, "lower bound holds");
    o.require(core_miss == 0, "fair-closed states contain the core");
    o.detail << "200 pops, bound violations=" << violations << ", populations with a fair state missing the core="
             << core_miss;
}

void c4(Outcome& o) {
    Rational th(3, 4);
    int n = sc::theta_upper_bound_smallest_n(th);
    auto r = best_guaranteed_window(sc::theta_upper_bound(th, n), jobs());
    Rational bound = (Rational(2) * th - Rational(1)) * Rational(n) + Rational(2);
    o.require(r.objective_value <= bound, "max window value within (2θ−1)n+2");
    o.detail << "n=" << n << ", best window " << r.best_window.str() << " value " << r.objective_value.str()
             << " <= " << bound.str() << " over " << r.per_candidate.size() << " candidates";
}

void c5(Outcome& o) {
    auto p12 = sc::trolls(12);
    int none = fair_limit_min_quotient(p12, Window::all()).min_size;
    auto best = best_guaranteed_window(p12, jobs());
    o.require(none == 1, "no moderation gives 1");
    o.require(best.objective_value == Rational(11), "best window gives 11");
    std::vector<Rational> gaps;
    for (int n = 6; n <= 14; ++n) {
        auto p = sc::trolls(n);
        Rational g = best_guaranteed_window(p, jobs()).objective_value /
                     Rational(fair_limit_min_quotient(p, Window::all()).min_size);
        o.require(g == Rational(n - 1), "gap n−1 at n=" + std::to_string(n));
        gaps.push_back(g);
    }
    for (std::size_t i = 1; i < gaps.size(); ++i) o.require(gaps[i] - gaps[i - 1] == Rational(1), "linear growth");
    o.detail << "n=12: none=" << none << ", best " << best.best_window.str() << "=" << best.objective_value.str()
             << "; gaps n=6..14 = 5..13, slope 1";
}

void c6(Outcome& o) {
    auto sp = sc::cycling_single(20);
    auto pop = sp.expand();
    auto counts = sc::stack_counts(sp);
    int stable = 0, total = 0;
    for (int a = 0; a <= counts[0]; ++a)
        for (int b = 0; b <= counts[1]; ++b)
            for (int c = 0; c <= counts[2]; ++c) {
                UserSet s;
                int take[3] = {a, b, c};
                for (int st = 0; st < 3; ++st)
                    for (int i = 0; i < take[st]; ++i) s.push_back(sp.first_id(st) + i);
                ++total;
                stable += is_stable(s, pop, Window::all());
            }
    auto trace = simulate(pop, Policy::none(), sc::block_schedule(counts, {0, 1, 2}), 10000);
    int stable_steps = 0;
    for (auto& st : trace.steps) stable_steps += is_stable(st.state, pop, Window::all());
    o.require(stable == 0, "no stable arrangement");
    o.require(stable_steps == 0 && trace.steps.size() == 10000, "block trace never stabilizes");
    o.detail << "stable count vectors " << stable << "/" << total << ", stable steps in 10^4-step block trace "
             << stable_steps;
}

void c7(Outcome& o) {
    std::vector<std::pair<Rational, Rational>> bl{{1, 1}, {2, 1}, {Rational(1, 2), 1}, {3, Rational(1, 2)}};
    int runs = 0, unstable = 0, bad_join = 0, bad_leave = 0;
    for (int t = 0; t < 500; ++t) {
        auto [b, l] = bl[t % bl.size()];
        int n = 3 + t % 10;
        auto pop = sc::mutual_random(n, b, l, 1000 + t);
        for (int s = 0; s < 10; ++s) {
            ++runs;
            auto tr = simulate(pop, Policy::none(), Schedule::seeded_random(std::uint64_t(t) * 10 + s), 60L * n);
            Rational prev = potential(tr.initial, pop);
            for (auto& st : tr.steps) {
                Rational cur = potential(st.state, pop);
                if (st.action == Action::Join && cur < prev) ++bad_join;
                if (st.action == Action::Leave && !(cur > prev)) ++bad_leave;
                prev = cur;
            }
            if (!is_stable(tr.steps.back().state, pop, Window::all())) ++unstable;
        }
    }
    o.require(unstable == 0, "every run stabilizes");
    o.require(bad_join == 0 && bad_leave == 0, "potential monotone");
    o.detail << runs << " runs, unstable=" << unstable << ", join decreases=" << bad_join
             << ", non-increasing leaves=" << bad_leave;
}

StackedPopulation sampling_population() {
    StackedPopulation sp;
    sp.stacks = {{direct(1, 1, 2), 100, 0}, {direct(1, 2, 3), 800, 0}, {direct(2, 3, 3), 100, 0}};
    return sp;
}

void c8(Outcome& o) {
    auto sp = sampling_population();
    auto pop = sp.expand();
    const long n = 1000, s_opt = 900;
    const Rational beta(1, 5), tmin = theta_min(pop);
    o.require(lcc_theta_one(pop).size == s_opt, "analytic s_opt = 900");
    Rational target = beta * (Rational(2) * tmin - Rational(1)) * Rational(s_opt);
    std::map<std::string, int> cache;
    for (int m : {50, 100, 200}) {
        double bound = sampling_bound(n, m, tmin, s_opt, beta);
        int hits = 0;
        for (int seed = 0; seed < 200; ++seed) {
            Window w = sample_window(pop, m, std::uint64_t(m) * 1000 + seed);
            auto it = cache.find(w.str());
            if (it == cache.end())
                it = cache.emplace(w.str(), fair_limit_min_quotient(sp, w).min_size).first;
            hits += Rational(it->second) >= target;
        }
        double freq = hits / 200.0;
        if (bound > 0) o.require(freq >= bound, "frequency >= bound at m=" + std::to_string(m));
        char buf[128];
        std::snprintf(buf, sizeof buf, "m=%d: freq %.3f vs bound %.4f%s; ", m, freq, bound, bound > 0 ? "" : " (vacuous)");
        o.detail << buf;
    }
    o.detail << "target " << target.str() << ", distinct windows " << cache.size();
}

void c9(Outcome& o) {
    auto s = sc::ideological(20, 1);
    auto r = best_ideological_window(s.pop, s.platform, jobs());
    Rational narrow = ideological_value(s.pop, s.platform.interval, s.platform);
    o.require(r.best_window == Window::closed(1, 4) && r.objective_value == Rational(10), "wide window [1,4] = 10");
    o.require(r.objective_value > narrow && narrow == Rational(5), "window = interval gives 5");
    IdeologicalPlatform open{Window::all(), 1};
    auto t = best_ideological_window(sc::trolls(12), open, jobs());
    o.require(open.interval.contains(t.best_window) && t.best_window != open.interval, "trolls: strictly narrower");
    o.detail << "best " << r.best_window.str() << "=" << r.objective_value.str() << " > interval " << narrow.str()
             << "; trolls with unbounded interval choose " << t.best_window.str();
}

void c10(Outcome& o) {
    Rng rng(510);
    int shrinks = 0;
    for (int t = 0; t < 200; ++t) {
        int n = 2 + int(rng.below(9));
        Population hi, lo;
        for (int i = 0; i < n; ++i) {
            long p = long(rng.below(11));
            Rational b(1 + long(rng.below(4)), 1 + long(rng.below(2)));
            Rational lam(1 + long(rng.below(4)), 4);
            Rational lam_lo = lam * Rational(long(rng.below(4)), 4);
            long l = p - long(rng.below(5)), r = p + long(rng.below(5));
            hi.users.push_back(testing::disutility(l, p, r, b, lam));
            lo.users.push_back(testing::disutility(l, p, r, b, lam_lo));
        }
        shrinks += lcc_exact(lo).size < lcc_exact(hi).size;
    }
    o.require(shrinks == 0, "lower lambda never shrinks the LCC");
    auto g = sc::personalization_gap(1, 1, Rational(3, 5));
    auto coarse = best_guaranteed_window(g.coarse, jobs());
    auto fine = best_guaranteed_window(g.fine, jobs());
    o.require(coarse.objective_value > fine.objective_value, "coarse personalization beats fine");
    o.detail << "200 pops, shrinks=" << shrinks << "; gap instance (" << g.t1 << "/" << g.t2 << "/" << g.t3 << "/"
             << g.t4 << "): best under λ " << coarse.objective_value.str() << " > under λ′ "
             << fine.objective_value.str();
}

void c11(Outcome& o) {
    auto ins = sc::insurgency(40, Rational(1, 10));
    MultiQuotientAnalysis mq(ins);
    int eq_min = 1 << 30;
    for (int e : mq.graph().equilibria()) eq_min = std::min(eq_min, mq.sizes(e)[0]);
    auto flat = ins.expand();
    auto tr = multi_simulate(flat, sc::block_schedule(sc::stack_counts(ins), {3, 2, 1, 0}), 400);
    auto end = tr.steps.back().state;
    int adversarial = mq.report(0).per_platform_min_sizes[0];
    o.require(eq_min == 4, "minimizing equilibrium keeps 4 on platform 1");
    o.require(multi_is_stable(end, flat) && platform_sizes(end, 2)[0] == 4, "narrative order ends at 4");
    o.require(adversarial == 1, "adversarial fair-limit minimum (frozen) is 1");

    std::vector<Window> ws{Window::none()};
    for (int a = 1; a <= 7; ++a)
        for (int b = a; b <= 7; ++b) ws.push_back(Window::closed(a, b));
    int pairs = 0, bad = 0;
    for (std::optional<Rational> gamma : {std::optional<Rational>(), std::optional<Rational>(1)})
        for (auto& w1 : ws) {
            if (!w1.contains(Rational(4))) continue;
            for (auto& w2 : ws) {
                MultiQuotientAnalysis inc(sc::incumbency(95, 3, w1, w2, gamma));
                ++pairs;
                bool ok = inc.stable(0) && inc.report(0).per_platform_min_sizes[0] == inc.sizes(0)[0];
                bad += !ok;
            }
        }
    o.require(bad == 0, "incumbency stable for every window pair");
    o.detail << "insurgency: min platform-1 size over equilibria " << eq_min << ", narrative schedule ends "
             << platform_sizes(end, 2)[0] << "/" << platform_sizes(end, 2)[1]
             << ", adversarial fair limit " << adversarial << " (cycling SCC, see README); incumbency: " << pairs - bad
             << "/" << pairs << " window pairs x bandwidths stable with no smaller fair-closed structure";
}

void c12(Outcome& o) {
    for (auto [regime, order, name] :
         {std::tuple{sc::Regime::Proportion, std::vector<int>{0, 1, 2, 3}, "γ=1"},
          std::tuple{sc::Regime::Utility, std::vector<int>{0, 1, 2, 3, 1, 2}, "γ=n"}}) {
        auto cfg = sc::cycling_multi(30, regime);
        auto flat = cfg.expand();
        auto tr = multi_simulate(flat, sc::block_schedule(sc::stack_counts(cfg), order), 10000);
        int stable = 0, switches = 0;
        for (std::size_t t = 0; t < tr.steps.size(); ++t) {
            stable += multi_is_stable(tr.steps[t].state, flat);
            if (t + 3000 >= tr.steps.size()) switches += tr.steps[t].from != tr.steps[t].to;
        }
        o.require(stable == 0 && switches > 0, std::string("cycles under ") + name);
        o.detail << name << ": stable steps " << stable << ", switches in last 3000 steps " << switches << "; ";
    }
    Rng rng(1212);
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
        int n = 3 + int(rng.below(6)), k = 2 + int(rng.below(2));
        long radius = 1 + long(rng.below(3));
        Rational b(1 + long(rng.below(3))), lam(1 + long(rng.below(2)), 2);
        CompetitionConfig c;
        for (int i = 0; i < n; ++i) {
            long p = long(rng.below(8));
            c.users.push_back(testing::disutility(p - radius, p, p + radius, b, lam));
            c.bandwidth.push_back(Rational(n));
            c.initial.push_back(int(rng.below(k + 1)) - 1);
        }
        for (int j = 0; j < k; ++j) c.platforms.push_back({Window::all(), std::nullopt, {}});
        MultiState s = c.initial;
        for (int step = 0; step < 40 * n; ++step) {
            int i = int(rng.below(n));
            auto next = multi_step(s, i, c);
            Rational before = multi_potential(s, c), after = multi_potential(next, c);
            if (after < before || (next[i] != s[i] && s[i] != kNone && !(after > before))) ++bad;
            s = next;
        }
        if (!multi_is_stable(s, c)) {
            auto tr = multi_simulate(c, Schedule::round_robin(n), 20L * n * n);
            if (!multi_is_stable(tr.steps.back().state, c)) ++bad;
        }
    }
    o.require(bad == 0, "multi-platform potential");
    o.detail << "potential violations on 200 configs: " << bad;
}

void c13(Outcome& o) {
    auto adv = sc::adversaries_example();
    int full = robust_size(adv, Window::all(), 1, jobs()).robust_size;
    int cut = robust_size(adv, Window::closed(1, 7), 1, jobs()).robust_size;
    o.require(full == 1 && cut == 6, "adversaries example 1 and 6");
    int cases = 0, fails = 0;
    for (Rational th : {Rational(1, 3), Rational(1, 2), Rational(2, 3)})
        for (int n = 3; n <= 12; ++n)
            for (int k : {1, 2}) {
                int kept = n - robust_trim_count(th, k);
                if (kept <= 0) continue;
                ++cases;
                int r = robust_size(sc::robust_family(n, th), Window::closed(1, kept), k, jobs()).robust_size;
                fails += r < kept - k;
            }
    o.require(fails == 0, "trimming suffices");
    Rng rng(1313);
    int thm = 0, thm_fail = 0;
    for (int t = 0; t < 40; ++t) {
        auto pop = testing::random_population(rng, 2 + int(rng.below(7)), kHighThetas, 8);
        for (int i = 0; i < pop.size(); ++i) pop.initial_adopters.push_back(i);
        std::sort(pop.initial_adopters.begin(), pop.initial_adopters.end());
        pop.initial_adopters.erase(std::unique(pop.initial_adopters.begin(), pop.initial_adopters.end()),
                                   pop.initial_adopters.end());
        Rational factor = Rational(2) * theta_min(pop) - Rational(1);
        int s_opt = lcc_exact(pop).size;
        for (int k : {1, 2}) {
            ++thm;
            int r = robust_size(pop, core_window(pop), k, jobs()).robust_size;
            thm_fail += Rational(r) < factor * Rational(s_opt) - Rational(k);
        }
    }
    o.require(thm_fail == 0, "core window robust lower bound");
    o.detail << "full window k=1: " << full << ", [1,7] k=1: " << cut << "; trim sweep " << cases - fails << "/"
             << cases << "; core-window bound " << thm - thm_fail << "/" << thm;
}

// n=4, θ=2/3: the best static window keeps 3 of the 4 LCC members
const char* kOneSidedFixture = R"({"users":[
  {"l":"0","p":"9","r":"9","theta":"2/3"},
  {"l":"0","p":"3","r":"5","theta":"2/3"},
  {"l":"0","p":"2","r":"7","theta":"2/3"},
  {"l":"0","p":"4","r":"6","theta":"2/3"}],
  "initial_adopters":[0,1,3]})";

void c14(Outcome& o) {
    const std::vector<Rational> thetas{Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4), Rational(1)};
    int agree = 0, dyn = 0;
    for (int t = 0; t < 200; ++t) {
        auto pop = sc::one_sided_random(1 + t % 10, thetas[t % thetas.size()], 7000 + t);
        int l = lcc_exact(pop).size;
        agree += lcc_one_sided(pop).size == l;
        dyn += fair_limit_min(pop, dynamic_window_one_sided(pop).policy()).min_size == l;
    }
    auto fx = io::population(io::parse_text(kOneSidedFixture));
    int l = lcc_exact(fx).size;
    int d = fair_limit_min(fx, dynamic_window_one_sided(fx).policy()).min_size;
    auto st = best_guaranteed_window(fx);
    o.require(agree == 200 && dyn == 200, "one-sided algorithm and dynamic plan reach the LCC");
    o.require(d == l && st.objective_value < Rational(l), "static window falls short on the fixture");
    o.detail << "one-sided = exact " << agree << "/200, dynamic = LCC " << dyn << "/200; fixture LCC " << l
             << ", dynamic " << d << ", best static " << st.objective_value.str() << " at " << st.best_window.str();
}

void c15(Outcome& o) {
    Rng rng(1515);
    int tried = 0, equal = 0, skipped = 0;
    for (int t = 0; t < 600; ++t) {
        FreqPopulation fp;
        int n = 1 + int(rng.below(4));
        for (int i = 0; i < n; ++i) {
            long p = long(rng.below(7));
            Rational th(long(rng.below(5)), 4);
            fp.users.push_back({direct(p - long(rng.below(4)), p, p + long(rng.below(4)), th), 1 + int(rng.below(3))});
        }
        if (fp.total() < 2) {
            ++skipped;
            continue;
        }
        Population pop;
        try {
            pop = expand_frequencies(fp);
        } catch (const std::invalid_argument&) {
            ++skipped;
            continue;
        }
        ++tried;
        equal += lcc_variable_frequency_oracle(fp) == lcc_exact(pop).size;
    }
    o.require(tried > 200 && equal == tried, "oracle equals expanded LCC");
    o.detail << equal << "/" << tried << " equal (" << skipped << " instances outside the reduction's domain)";
}

void c16(Outcome& o) {
    // stacked fixtures with at most 12 eligible users, every candidate window
    std::vector<StackedPopulation> fixtures;
    for (int n = 3; n <= 12; ++n) fixtures.push_back(sc::trolls(n));
    fixtures.push_back(sc::ideological(8, 1).pop);
    fixtures.push_back(sc::ideological(12, 1).pop);
    fixtures.push_back(sc::theta_upper_bound(Rational(3, 4), 12));
    Rng rng(1616);
    for (int t = 0; t < 20; ++t) {
        StackedPopulation sp;
        int stacks = 2 + int(rng.below(3)), left = 12;
        for (int s = 0; s < stacks && left > 0; ++s) {
            long p = long(rng.below(6));
            int cnt = 1 + int(rng.below(std::min(4, left)));
            left -= cnt;
            sp.stacks.push_back({direct(p - long(rng.below(3)), p, p + long(rng.below(3)), kHighThetas[rng.below(5)] -
                                                                                              Rational(1, 2)),
                                 cnt, int(rng.below(cnt + 1))});
        }
        fixtures.push_back(sp);
    }
    int compared = 0, mismatch = 0, qwitness_bad = 0;
    for (auto& sp : fixtures)
        for (auto& w : candidate_windows(sp)) {
            QuotientAnalysis qa(sp, w);
            auto q = qa.report();
            auto f = fair_limit_min(sp.expand(), w);
            ++compared;
            mismatch += q.min_size != f.min_size;
            qwitness_bad += quotient_witness_liminf(qa, q.witness) != q.min_size;
        }
    o.require(mismatch == 0, "quotient equals flat");
    o.require(qwitness_bad == 0, "quotient witnesses attain min");

    int schedules = 0, undercut = 0, fwitness_bad = 0;
    std::vector<std::pair<Population, Window>> cases{{sc::five_user(), Window::closed(2, 5)},
                                                     {sc::trolls(8).expand(), Window::all()},
                                                     {sc::cycling_single(20).expand(), Window::all()}};
    for (int t = 0; t < 17; ++t) {
        auto pop = testing::random_population(rng, 3 + int(rng.below(6)), kHighThetas);
        cases.push_back({pop, rng.below(2) ? Window::all() : core_window(pop)});
    }
    int per_case = 1000 / int(cases.size()) + 1;
    for (auto& [pop, w] : cases) {
        EngineCaps caps;
        caps.flat_users = 20;
        auto rep = fair_limit_min(pop, w, caps);
        fwitness_bad += liminf_size(pop, Policy::fixed(w), rep.witness) != rep.min_size;
        for (int s = 0; s < per_case && schedules < 1000; ++s) {
            std::vector<int> seq;
            for (int i = 0; i < pop.size(); ++i) seq.push_back(i);
            int extra = int(rng.below(2 * pop.size() + 1));
            for (int e = 0; e < extra; ++e) seq.push_back(int(rng.below(pop.size())));
            for (int i = int(seq.size()) - 1; i > 0; --i) std::swap(seq[i], seq[rng.below(i + 1)]);
            ++schedules;
            undercut += liminf_size(pop, Policy::fixed(w), Schedule::cyclic(seq)) < rep.min_size;
        }
    }
    o.require(undercut == 0, "random fair schedules never undercut");
    o.require(fwitness_bad == 0, "flat witnesses attain min");
    o.detail << compared << " fixture/window pairs, mismatches " << mismatch << ", quotient witness failures "
             << qwitness_bad << "; " << schedules << " random fair schedules, undercuts " << undercut
             << ", flat witness failures " << fwitness_bad;
}

}  // namespace

int main() {
    std::vector<std::pair<const char*, Criterion>> all{
        {"five-user example: LCC and fair limit", c1},
        {"theta-one algorithm equals brute force", c2},
        {"core-window lower bound", c3},
        {"upper-bound construction", c4},
        {"trolls", c5},
        {"single-platform cycling", c6},
        {"convergence with mutual compatibility", c7},
        {"sampling bound", c8},
        {"ideological windows", c9},
        {"personalization", c10},
        {"competition: insurgency and incumbency", c11},
        {"multi-platform cycling and potential", c12},
        {"robustness to shocks", c13},
        {"one-sided dynamic windows", c14},
        {"variable-frequency reduction", c15},
        {"engine cross-validation", c16},
    };
    int failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            all[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::printf("[%s] %2zu %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", i + 1, all[i].first, secs,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", int(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}
