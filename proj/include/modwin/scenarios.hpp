#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>

#include "modwin/competition.hpp"
#include "modwin/core.hpp"
#include "modwin/dynamics.hpp"
#include "modwin/policy.hpp"

namespace modwin::scenarios {

Population five_user();
StackedPopulation trolls(int n, Rational theta = Rational(1, 2));

struct Ideological {
    StackedPopulation pop;
    IdeologicalPlatform platform;
};
Ideological ideological(int n, Rational d);

struct PersonalizationGap {
    StackedPopulation coarse;  // thresholds from lambda
    StackedPopulation fine;    // thresholds from lambda' (better personalization)
    Rational theta, theta_fine;
    int t1, t2, t3, t4;
};
PersonalizationGap personalization_gap(Rational b, Rational lambda, Rational lambda_fine);

StackedCompetition insurgency(int n, Rational eps);
StackedCompetition incumbency(int M, int u, const Window& w1, const Window& w2,
                              std::optional<Rational> gamma = std::nullopt);

StackedPopulation cycling_single(int n);
enum class Regime { Proportion, Utility };
StackedCompetition cycling_multi(int n, Regime regime);

Population robust_family(int n, Rational theta);
Population adversaries_example();

StackedPopulation theta_upper_bound(Rational theta, int n);
int theta_upper_bound_smallest_n(Rational theta, int limit = 10000);

Population one_sided_random(int n, Rational theta, std::uint64_t seed);
Population mutual_random(int n, Rational b, Rational lambda, std::uint64_t seed);

// Cyclic schedule acting every member of each listed stack in turn.
Schedule block_schedule(const std::vector<int>& stack_counts, const std::vector<int>& stack_order);
std::vector<int> stack_counts(const StackedPopulation& pop);
std::vector<int> stack_counts(const StackedCompetition& cfg);

struct infeasible : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace modwin::scenarios
