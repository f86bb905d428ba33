#include "doctest.h"
#include "helpers.hpp"
#include "modwin/extensions.hpp"
#include "modwin/lcc.hpp"
#include "modwin/scenarios.hpp"

using namespace modwin;
using testing::direct;

TEST_SUITE("extensions") {

TEST_CASE("shock space") {
    auto pop = scenarios::five_user();
    auto grid = adversary_grid(pop);
    CHECK(shock_space(pop, 0, grid).size() == 1);
    Population three;
    three.users = {direct(0, 1, 2), direct(0, 2, 2), direct(1, 2, 3)};
    auto g3 = adversary_grid(three);
    CHECK(shock_space(three, 1, g3).size() == 1 + 3 + g3.size());
    auto adv = scenarios::adversaries_example();
    auto shocks = shock_space(adv, 1, adversary_grid(adv));
    bool has_remove_first = false;
    for (auto& s : shocks) has_remove_first |= s.removed == UserSet{0} && s.added.empty();
    CHECK(has_remove_first);
}

TEST_CASE("applying a shock") {
    auto adv = scenarios::adversaries_example();
    Shock s{{0}, {direct(0, 5, 5)}};
    auto p = apply_shock(adv, s);
    CHECK(p.size() == adv.size());
    CHECK(p.initial_adopters.size() == adv.initial_adopters.size() - 1);
    CHECK(validate(p).empty());
}

TEST_CASE("adversaries example") {
    auto adv = scenarios::adversaries_example();
    CHECK(robust_size(adv, Window::all(), 1, 2).robust_size == 1);
    CHECK(robust_size(adv, Window::closed(1, 7), 1, 2).robust_size == 6);
    CHECK(robust_size(adv, Window::closed(1, 7), 0).robust_size == fair_limit_min(adv, Window::closed(1, 7)).min_size);
}

TEST_CASE("robust size is antitone in k") {
    Rng rng(41);
    for (int trial = 0; trial < 8; ++trial) {
        auto pop = testing::random_population(rng, 5, {Rational(1, 2), Rational(2, 3)});
        auto w = core_window(pop);
        int prev = fair_limit_min(pop, w).min_size;
        for (int k = 0; k <= 2; ++k) {
            int r = robust_size(pop, w, k, 4).robust_size;
            CHECK(r <= prev);
            prev = r;
        }
    }
}

TEST_CASE("trim counts") {
    CHECK(robust_trim_count(Rational(1, 2), 1) == 1);
    CHECK(robust_trim_count(Rational(1, 3), 1) == 2);
    CHECK(robust_trim_count(Rational(2, 3), 3) == 3);
}

TEST_CASE("frequency expansion") {
    FreqPopulation fp;
    fp.users = {{direct(0, 1, 2, Rational(1, 4)), 1}, {direct(0, 1, 2, Rational(1, 2)), 1}};
    auto same = expand_frequencies(fp);
    CHECK(same.users[0].threshold.theta == Rational(1, 4));
    fp.users = {{direct(0, 1, 2, Rational(1, 4)), 2}, {direct(0, 1, 2), 1}, {direct(0, 1, 2), 1}};
    fp.users[1].prefs.threshold.theta = Rational(1, 2);
    fp.users[2].prefs.threshold.theta = Rational(1, 2);
    fp.initial_adopters = {0};
    auto pop = expand_frequencies(fp);
    REQUIRE(pop.size() == 4);
    CHECK(pop.users[0].threshold.theta == Rational(7, 12));
    CHECK(pop.users[1].threshold.theta == Rational(7, 12));
    CHECK(pop.initial_adopters == UserSet{0, 1});
    FreqPopulation heavy;
    heavy.users = {{direct(0, 1, 2, Rational(9, 10)), 3}, {direct(0, 1, 2), 1}};
    CHECK_THROWS_WITH(expand_frequencies(heavy), "frequency too dominant for reduction");
}

TEST_CASE("frequency oracle trivial cases") {
    FreqPopulation one;
    one.users = {{direct(0, 1, 2), 1}};
    CHECK(lcc_variable_frequency_oracle(one) == 1);
    FreqPopulation two;
    two.users = {{direct(0, 1, 2), 1}, {direct(0, 2, 2), 1}};
    CHECK(lcc_variable_frequency_oracle(two) == 2);
    FreqPopulation big;
    for (int i = 0; i < 5; ++i) big.users.push_back({direct(0, 1, 2), 1});
    CHECK_THROWS(lcc_variable_frequency_oracle(big));
}

}
