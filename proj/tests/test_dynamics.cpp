#include "doctest.h"
#include "helpers.hpp"
#include "modwin/scenarios.hpp"

using namespace modwin;
using testing::direct;

TEST_SUITE("dynamics") {

TEST_CASE("eligibility under a window") {
    auto pop = scenarios::five_user();
    CHECK(eligible(pop, Window::closed(2, 5)) == UserSet{0, 1, 2, 4});
    CHECK(eligible(pop, Window::all()) == UserSet{0, 1, 2, 3, 4});
    CHECK(eligible(Population{}, Window::all()).empty());
}

TEST_CASE("single steps on the five-user example") {
    auto pop = scenarios::five_user();
    auto w = Window::closed(2, 5);
    CHECK(step({2}, 4, w, pop) == UserSet{2, 4});
    CHECK(step({0, 1, 2, 4}, 4, w, pop) == UserSet{0, 1, 2});
    CHECK(step({0, 3}, 3, w, pop) == UserSet{0});
}

TEST_CASE("initial states drop banned adopters") {
    auto pop = scenarios::five_user();
    CHECK(initial_state(pop, Policy::none()).empty());
    pop.initial_adopters = {0, 1, 2, 3, 4};
    CHECK(initial_state(pop, Policy::fixed(Window::closed(2, 5))) == UserSet{0, 1, 2, 4});
    pop.initial_adopters = {3};
    auto t = simulate(pop, Policy::fixed(Window::closed(2, 5)), Schedule::round_robin(5), 10);
    CHECK(t.initial.empty());
}

TEST_CASE("simulation converges to the LCC on the five-user example") {
    auto pop = scenarios::five_user();
    auto policy = Policy::fixed(Window::closed(2, 5));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto t = simulate(pop, policy, Schedule::seeded_random(seed), 200);
        CHECK(t.steps.back().state == UserSet{0, 1, 2});
    }
    auto t = simulate(pop, policy, Schedule::round_robin(5), 15);
    CHECK(t.steps.back().state == UserSet{0, 1, 2});
    for (auto& st : simulate(Population{}, policy, Schedule::seeded_random(1), 5).steps) CHECK(st.state.empty());
}

TEST_CASE("stability") {
    auto pop = scenarios::five_user();
    auto w = Window::closed(2, 5);
    CHECK(is_stable({0, 1, 2}, pop, w));
    CHECK_FALSE(is_stable({}, pop, w));
    auto cyc = scenarios::cycling_single(20).expand();
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        UserSet s;
        for (int i = 0; i < cyc.size(); ++i)
            if (rng.below(2)) s.push_back(i);
        CHECK_FALSE(is_stable(s, cyc, Window::all()));
    }
}

TEST_CASE("fair-limit engine") {
    auto pop = scenarios::five_user();
    auto r = fair_limit_min(pop, Window::closed(2, 5));
    CHECK(r.min_size == 3);
    CHECK(r.equilibria == std::vector<std::vector<int>>{{0, 1, 2}});
    Population one;
    one.users = {direct(0, 1, 2)};
    CHECK(fair_limit_min(one, Window::all()).min_size == 1);
    auto trolls = scenarios::trolls(8).expand();
    CHECK(fair_limit_min(trolls, Window::all()).min_size == 1);
    CHECK(fair_limit_min(Population{}, Window::all()).min_size == 0);
}

TEST_CASE("witness schedules attain the reported size") {
    auto trolls = scenarios::trolls(7).expand();
    auto r = fair_limit_min(trolls, Window::all());
    CHECK(liminf_size(trolls, Policy::none(), r.witness) == r.min_size);
    auto pop = scenarios::five_user();
    auto w = fair_limit_min(pop, Window::closed(2, 5));
    CHECK(liminf_size(pop, Policy::fixed(Window::closed(2, 5)), w.witness) == 3);
}

TEST_CASE("schedule fairness checks") {
    CHECK_NOTHROW(Schedule::cyclic({0, 1, 2, 1}).check_fair(3));
    CHECK_THROWS(Schedule::cyclic({0, 1}).check_fair(3));
    CHECK_THROWS(Schedule::round_robin(std::vector<int>{0, 0, 1}).check_fair(3));
    CHECK_NOTHROW(Schedule::seeded_random(1).check_fair(4));
}

TEST_CASE("seeded schedules replay identically") {
    auto pop = scenarios::mutual_random(8, 1, 1, 5);
    auto a = simulate(pop, Policy::none(), Schedule::seeded_random(11), 300);
    auto b = simulate(pop, Policy::none(), Schedule::seeded_random(11), 300);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
        CHECK(a.steps[i].actor == b.steps[i].actor);
        CHECK(a.steps[i].state == b.steps[i].state);
    }
}

TEST_CASE("phased policies advance once the target is on") {
    auto pop = scenarios::five_user();
    auto policy = Policy::phased({{Window::closed(2, 2), {Advance::Kind::Superset, {2}}},
                                  {Window::closed(2, 5), {}}});
    auto t = simulate(pop, policy, Schedule::round_robin(5), 30);
    CHECK(t.steps.back().phase == 1);
    CHECK(t.steps.back().state == UserSet{0, 1, 2});
    CHECK_THROWS(Policy::phased({{Window::all(), {Advance::Kind::Always, {}}}}));
}

TEST_CASE("quotient engine matches the flat engine on small stacked populations") {
    auto cyc = scenarios::cycling_single(20);
    QuotientAnalysis qa(cyc, Window::all());
    for (int s = 0; s < qa.graph().num_states(); ++s) CHECK_FALSE(qa.stable(s));
    CHECK(qa.graph().equilibria().empty());
    for (int n = 4; n <= 10; ++n) {
        auto t = scenarios::trolls(n);
        CHECK(fair_limit_min_quotient(t, Window::all()).min_size == fair_limit_min(t.expand(), Window::all()).min_size);
    }
}

TEST_CASE("potential on mutual populations") {
    Population pop;
    pop.users = {testing::disutility(0, 1, 2, 1, 1), testing::disutility(0, 1, 2, 1, 1),
                 testing::disutility(5, 6, 7, 1, 1)};
    CHECK(potential({}, pop) == Rational(0));
    CHECK(potential({0, 1}, pop) == Rational(2));
    CHECK(potential({0, 2}, pop) == Rational(-2));
}

TEST_CASE("caps are enforced") {
    auto pop = scenarios::trolls(20).expand();
    CHECK_THROWS_AS(fair_limit_min(pop, Window::all()), cap_exceeded);
    EngineCaps small;
    small.quotient_states = 4;
    CHECK_THROWS_AS(fair_limit_min_quotient(scenarios::trolls(20), Window::all(), small), cap_exceeded);
}

}
