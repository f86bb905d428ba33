#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "modwin/lcc.hpp"
#include "modwin/scenarios.hpp"

using namespace modwin;
using testing::direct;

TEST_SUITE("lcc") {

TEST_CASE("five-user example") {
    auto pop = scenarios::five_user();
    CHECK(lcc_exact(pop).members == UserSet{0, 1, 2});
    CHECK(lcc_theta_one(pop).members == UserSet{0, 1, 2});
    CHECK(mutually_compatible_core(pop).members == UserSet{0, 1, 2});
    CHECK(core_window(pop) == Window::closed(2, 5));
}

TEST_CASE("identical and incompatible users") {
    Population same;
    for (int i = 0; i < 6; ++i) same.users.push_back(direct(0, 1, 2, Rational(2, 3)));
    CHECK(lcc_exact(same).size == 6);
    CHECK(lcc_one_sided(same).size == 6);
    Population apart;
    apart.users = {direct(0, 0, 0), direct(5, 5, 5)};
    CHECK(lcc_theta_one(apart).size == 1);
    Population stack = same;
    stack.users.push_back(direct(10, 10, 10, Rational(2, 3)));
    CHECK(mutually_compatible_core(stack).size == 6);
}

TEST_CASE("core window shapes") {
    Population single;
    single.users = {direct(0, 3, 5)};
    CHECK(core_window(single) == Window::closed(3, 3));
    Population pair;
    pair.users = {direct(-1, -1, 1), direct(-1, 1, 1)};
    CHECK(core_window(pair) == Window::closed(-1, 1));
}

TEST_CASE("one-sided LCC agrees with brute force and theta-one") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto pop = scenarios::one_sided_random(2 + int(seed % 8), Rational(1, 2 + int(seed % 3)), seed);
        CHECK(lcc_one_sided(pop).size == lcc_exact(pop).size);
        auto one = scenarios::one_sided_random(2 + int(seed % 8), 1, seed);
        CHECK(lcc_one_sided(one).size == lcc_theta_one(one).size);
    }
}

TEST_CASE("dynamic one-sided windows") {
    Population single;
    single.users = {direct(0, 4, 6)};
    auto plan = dynamic_window_one_sided(single);
    CHECK(plan.phase1 == Window::closed(4, 4));
    CHECK(plan.phase2 == Window::closed(4, 4));
    Population same;
    for (int i = 0; i < 4; ++i) same.users.push_back(direct(0, 2, 5, Rational(1, 2)));
    auto p2 = dynamic_window_one_sided(same);
    CHECK(p2.phase1 == p2.phase2);
}

TEST_CASE("sampling") {
    auto pop = scenarios::five_user();
    CHECK(sample_window(pop, 5, 1) == core_window(pop));
    auto w = sample_window(pop, 1, 9);
    REQUIRE(w.lo);
    CHECK(w.lo == w.hi);
    CHECK(sampling_bound(100, 0, Rational(3, 4), 50, Rational(1, 2)) == doctest::Approx(-99.0));
    CHECK(sampling_bound(100, 50, Rational(3, 4), 50, Rational(999999, 1000000)) == doctest::Approx(-99.0));
    CHECK(sampling_bound(10000, 5000, Rational(3, 4), 5000, Rational(1, 2)) ==
          doctest::Approx(1.0 - 10000.0 * std::exp(-5000.0 / 256.0)));
    CHECK_THROWS(sampling_bound(100, 10, Rational(1, 2), 50, Rational(1, 2)));
    CHECK_THROWS(sample_window(pop, 0, 1));
    CHECK_THROWS(sample_window(pop, 6, 1));
    CHECK(theta_min(pop) == Rational(1));
}

TEST_CASE("lcc cap") {
    Population big;
    for (int i = 0; i < 21; ++i) big.users.push_back(direct(0, 1, 2));
    CHECK_THROWS_AS(lcc_exact(big), cap_exceeded);
}

}
