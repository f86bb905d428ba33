#include "modwin/scenarios.hpp"

#include <algorithm>
#include <numeric>

namespace modwin::scenarios {

namespace {

UserPrefs user(Rational l, Rational p, Rational r, ThresholdSpec t) { return {l, r, p, t}; }

ThresholdSpec direct(Rational t) { return ThresholdSpec::direct(t); }

void need(bool ok, const std::string& what) {
    if (!ok) throw infeasible(what);
}

// exact count x*n, which must be a positive integer
int portion(Rational x, int n, const std::string& what) {
    Rational v = x * Rational(n);
    need(v.den() == 1 && v.num() >= 1, what + " must be a positive integer (got " + v.str() + ")");
    return int(v.num());
}

}  // namespace

Population five_user() {
    auto one = direct(1);
    Population pop;
    pop.users = {user(2, 4, 6, one), user(2, 5, 5, one), user(1, 2, 5, one), user(2, 6, 6, one), user(2, 3, 3, one)};
    return pop;
}

StackedPopulation trolls(int n, Rational theta) {
    need(n >= 2, "trolls needs n >= 2");
    need(theta > Rational(0) && theta <= Rational(1), "trolls needs 0 < theta <= 1");
    StackedPopulation pop;
    pop.stacks.push_back({user(0, 1, 2, direct(theta)), n - 1, 0});
    pop.stacks.push_back({user(0, 3, 3, direct(theta)), 1, 0});
    return pop;
}

Ideological ideological(int n, Rational d) {
    need(n % 4 == 0 && n > 0, "ideological needs n divisible by 4");
    need(d > Rational(0), "ideological needs d > 0");
    auto t = direct(Rational(1, 5));
    int q = n / 4;
    Ideological out;
    out.pop.stacks = {{user(1, 1, 4, t), q, 0}, {user(1, 2, 2, t), q, 0}, {user(2, 3, 3, t), q, 0},
                      {user(3, 4, 4, t), q, 0}};
    out.platform = {Window::closed(2, 4), d};
    return out;
}

PersonalizationGap personalization_gap(Rational b, Rational lambda, Rational lambda_fine) {
    need(b > Rational(0), "personalization gap needs b > 0");
    need(lambda_fine < lambda && lambda_fine > Rational(0) && lambda <= Rational(1),
         "personalization gap needs 0 < lambda' < lambda <= 1");
    auto tc = ThresholdSpec::from_disutility(b, lambda);
    auto tf = ThresholdSpec::from_disutility(b, lambda_fine);
    Rational th = threshold_value(tc), thf = threshold_value(tf);
    Rational beta = thf / th;
    for (int n0 = 3; n0 <= 2000; ++n0) {
        Rational m1(n0 - 1);
        int t4 = int(((Rational(1) - th) * m1).floor());
        if (t4 < 1) continue;
        int top = int((th * m1).ceil());
        Rational lo2 = std::max((Rational(2) * th - Rational(1)) * Rational(n0) + Rational(1), beta * th * m1);
        for (int t2 = int(lo2.floor()) + 1; Rational(t2) < th * m1; ++t2) {
            int t1 = top + 1 - t2;
            if (t1 < 1 || t2 < 1) continue;
            Rational lo3 = ((Rational(1) - beta) * Rational((th * Rational(n0)).ceil()) + Rational(1)) / (beta * th);
            for (int t3 = int(lo3.floor()) + 1; t3 < t4; ++t3) {
                if (t3 < 1) continue;
                int n = n0 + t3;
                if (beta < Rational((th * Rational(n)).ceil() + 1, n - 1)) continue;
                PersonalizationGap g;
                g.theta = th;
                g.theta_fine = thf;
                g.t1 = t1, g.t2 = t2, g.t3 = t3, g.t4 = t4;
                auto build = [&](ThresholdSpec t) {
                    StackedPopulation p;
                    p.stacks = {{user(1, 1, 2, t), t1, t1}, {user(1, 2, 2, t), t2, t2}, {user(2, 3, 3, t), t3, 0},
                                {user(2, 4, 4, t), t4, t4}};
                    return p;
                };
                g.coarse = build(tc);
                g.fine = build(tf);
                return g;
            }
        }
    }
    throw infeasible("no personalization-gap instance satisfies the size inequalities (T2 and T3 bounds, "
                     "beta >= (ceil(theta n)+1)/(n-1)) for n0 <= 2000");
}

StackedCompetition insurgency(int n, Rational eps) {
    need(eps > Rational(0) && eps < Rational(1, 2), "insurgency needs 0 < eps < 1/2");
    int t1 = portion(eps, n, "eps*n");
    int t2 = portion(Rational(1, 2) - eps, n, "(1/2-eps)*n");
    int t3 = portion((Rational(1) - eps) / Rational(2), n, "(1-eps)*n/2");
    int t4 = portion(eps / Rational(2), n, "eps*n/2");
    auto t = ThresholdSpec::from_disutility(1, 1);
    StackedCompetition cfg;
    cfg.platforms = {{Window::closed(1, 3), Rational(1), {}}, {Window::all(), Rational(1), {}}};
    std::optional<Rational> g = Rational(1);
    cfg.stacks = {{user(1, 1, 2, t), t1, g, {0, t1, 0}},
                  {user(2, 2, 4, t), t2, g, {0, t2, 0}},
                  {user(2, 3, 4, t), t3, g, {0, t3, 0}},
                  {user(1, 4, 4, t), t4, g, {t4, 0, 0}}};
    return cfg;
}

StackedCompetition incumbency(int M, int u, const Window& w1, const Window& w2, std::optional<Rational> gamma) {
    need(M >= 2, "incumbency needs M >= 2");
    need(u >= 1, "incumbency needs u >= 1");
    Rational theta(M - 1, M + 2 * u - 1);
    auto t = ThresholdSpec::from_disutility(theta / (Rational(1) - theta), 1);
    int c = u + 1, last = 2 * u + 1;
    StackedCompetition cfg;
    cfg.platforms = {{w1, Rational(1), {}}, {w2, Rational(1), {}}};
    for (int pos = 1; pos <= last; ++pos) {
        CompetitionStack st;
        if (pos == c) {
            st.prefs = user(Rational(2 * c - 1, 2), c, Rational(2 * c + 1, 2), t);
            st.count = M;
        } else {
            st.prefs = user(1, pos, last, t);
            st.count = 1;
        }
        st.bandwidth = gamma;
        st.initial = {0, 0, 0};
        if (w1.contains(st.prefs.speech)) st.initial[1] = st.count;
        else if (w2.contains(st.prefs.speech)) st.initial[2] = st.count;
        else st.initial[0] = st.count;
        cfg.stacks.push_back(st);
    }
    return cfg;
}

StackedPopulation cycling_single(int n) {
    need(n > 0 && n % 20 == 0, "cycling-single needs n divisible by 20");
    auto t = ThresholdSpec::from_disutility(2, 1);
    StackedPopulation pop;
    pop.stacks = {{user(2, 2, 4, t), n / 5, 0}, {user(2, 3, 3, t), 9 * n / 20, 0}, {user(3, 4, 4, t), 7 * n / 20, 0}};
    return pop;
}

StackedCompetition cycling_multi(int n, Regime regime) {
    need(n > 0 && n % 10 == 0, "cycling-multi needs n divisible by 10");
    auto t = ThresholdSpec::from_disutility(Rational(7, 2), 1);
    std::optional<Rational> g = regime == Regime::Proportion ? Rational(1) : Rational(n);
    StackedCompetition cfg;
    cfg.platforms = {{Window::all(), Rational(1), {}}, {Window::all(), Rational(1), {}}};
    int a = n / 10;
    cfg.stacks = {{user(1, 1, 4, t), a, g, {0, a, 0}},
                  {user(1, 2, 2, t), 6 * a, g, {0, 6 * a, 0}},
                  {user(2, 3, 3, t), 2 * a, g, {0, 2 * a, 0}},
                  {user(1, 1, 4, t), a, g, {0, 0, a}}};
    return cfg;
}

Population robust_family(int n, Rational theta) {
    need(n >= 2, "robust family needs n >= 2");
    need(theta > Rational(0) && theta <= Rational(1), "robust family needs 0 < theta <= 1");
    int m = int((theta * Rational(n - 1)).ceil());
    Population pop;
    for (int i = 1; i <= n; ++i) {
        if (i <= m) pop.users.push_back(user(1, i, m + 1, direct(theta)));
        else pop.users.push_back(user(i - m, i, i, direct(theta)));
        pop.initial_adopters.push_back(i - 1);
    }
    return pop;
}

Population adversaries_example() { return robust_family(9, Rational(1, 2)); }

namespace {

struct UpperBoundShape {
    int K = 0, core = 0;
    std::vector<int> peripheral;  // left stacks then right stacks
    std::string problem;
};

UpperBoundShape upper_bound_shape(Rational theta, int n) {
    UpperBoundShape s;
    auto fail = [&](std::string why) {
        s.problem = std::move(why);
        return s;
    };
    if (theta <= Rational(1, 2) || theta >= Rational(1)) return fail("needs 1/2 < theta < 1");
    Rational q = (theta - Rational(1, 2)) * Rational(n);
    if (q.den() != 1 || q.num() < 1) return fail("(theta - 1/2) n must be a positive integer");
    Rational rest = (Rational(1) - theta) * Rational(n) - Rational(1);
    if (rest.den() != 1 || rest.num() < 1) return fail("(1 - theta) n - 1 must be a positive integer");
    s.K = 2 * int((rest / q).ceil());
    s.core = int(q.num()) + 1;
    int total = 2 * int(rest.num());
    int Q = (total + s.K - 1) / s.K;
    int deficit = s.K * Q - total;
    for (int j = 0; j < s.K; ++j) s.peripheral.push_back(j < deficit ? Q - 1 : Q);
    int qmin = *std::min_element(s.peripheral.begin(), s.peripheral.end());
    int qmax = *std::max_element(s.peripheral.begin(), s.peripheral.end());
    if (qmin < 1) return fail("peripheral stacks would be empty");
    Rational lo = (Rational(1) - theta) / theta, hi = theta / (Rational(1) - theta);
    if (!(lo * Rational(s.core) < Rational(qmin))) return fail("needs (1-theta)/theta * core < Q");
    if (!(Rational(qmax) < hi * Rational(s.core))) return fail("needs Q < theta/(1-theta) * core");
    if (!(lo * Rational(qmax) < Rational(qmin))) return fail("needs (1-theta)/theta * Q_max < Q_min");
    return s;
}

}  // namespace

StackedPopulation theta_upper_bound(Rational theta, int n) {
    auto s = upper_bound_shape(theta, n);
    need(s.problem.empty(), "theta-upper-bound infeasible: " + s.problem);
    auto t = direct(theta);
    int half = s.K / 2, last = s.K + 2;
    StackedPopulation pop;
    for (int j = 1; j <= half; ++j) pop.stacks.push_back({user(j, j, last, t), s.peripheral[j - 1], 0});
    pop.stacks.push_back({user(half + 1, half + 1, last, t), s.core, 0});
    pop.stacks.push_back({user(1, half + 2, half + 2, t), s.core, 0});
    for (int j = half + 3; j <= last; ++j) pop.stacks.push_back({user(1, j, j, t), s.peripheral[j - 3], 0});
    return pop;
}

int theta_upper_bound_smallest_n(Rational theta, int limit) {
    for (int n = 2; n <= limit; ++n)
        if (upper_bound_shape(theta, n).problem.empty()) return n;
    throw infeasible("no feasible n up to " + std::to_string(limit));
}

Population one_sided_random(int n, Rational theta, std::uint64_t seed) {
    need(n >= 1, "one-sided population needs n >= 1");
    Rng rng(seed);
    std::vector<int> pts(3 * n);
    std::iota(pts.begin(), pts.end(), 1);
    for (int k = 0; k < n; ++k) std::swap(pts[k], pts[k + int(rng.below(std::uint64_t(3 * n - k)))]);
    Population pop;
    for (int i = 0; i < n; ++i) {
        int r = pts[i] + int(rng.below(std::uint64_t(2 * n + 1)));
        pop.users.push_back(user(0, pts[i], r, direct(theta)));
        if (rng.below(2)) pop.initial_adopters.push_back(i);
    }
    return pop;
}

Population mutual_random(int n, Rational b, Rational lambda, std::uint64_t seed) {
    need(n >= 1, "mutual population needs n >= 1");
    Rng rng(seed);
    int radius = 1 + int(rng.below(3));
    auto t = ThresholdSpec::from_disutility(b, lambda);
    Population pop;
    for (int i = 0; i < n; ++i) {
        int p = int(rng.below(11));
        pop.users.push_back(user(p - radius, p, p + radius, t));
        if (rng.below(2)) pop.initial_adopters.push_back(i);
    }
    return pop;
}

Schedule block_schedule(const std::vector<int>& counts, const std::vector<int>& order) {
    std::vector<int> first(counts.size(), 0);
    for (std::size_t s = 1; s < counts.size(); ++s) first[s] = first[s - 1] + counts[s - 1];
    std::vector<int> seq;
    for (int s : order)
        for (int k = 0; k < counts.at(s); ++k) seq.push_back(first[s] + k);
    return Schedule::cyclic(seq);
}

std::vector<int> stack_counts(const StackedPopulation& pop) {
    std::vector<int> c;
    for (auto& s : pop.stacks) c.push_back(s.count);
    return c;
}

std::vector<int> stack_counts(const StackedCompetition& cfg) {
    std::vector<int> c;
    for (auto& s : cfg.stacks) c.push_back(s.count);
    return c;
}

}  // namespace modwin::scenarios
