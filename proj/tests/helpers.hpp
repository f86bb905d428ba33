#pragma once

#include "modwin/core.hpp"
#include "modwin/dynamics.hpp"

namespace testing {

using modwin::Rational;

inline modwin::UserPrefs direct(Rational l, Rational p, Rational r, Rational theta = 1) {
    return {l, r, p, modwin::ThresholdSpec::direct(theta)};
}

inline modwin::UserPrefs disutility(Rational l, Rational p, Rational r, Rational b, Rational lambda) {
    return {l, r, p, modwin::ThresholdSpec::from_disutility(b, lambda)};
}

// Random population with integer coordinates, each speech inside its interval.
inline modwin::Population random_population(modwin::Rng& rng, int n, const std::vector<Rational>& thetas,
                                            int span = 10) {
    modwin::Population pop;
    for (int i = 0; i < n; ++i) {
        long p = long(rng.below(span + 1));
        long l = p - long(rng.below(5));
        long r = p + long(rng.below(5));
        pop.users.push_back(direct(l, p, r, thetas[rng.below(thetas.size())]));
        if (rng.below(2)) pop.initial_adopters.push_back(i);
    }
    return pop;
}

}  // namespace testing
