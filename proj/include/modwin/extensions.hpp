#pragma once

#include <vector>

#include "modwin/core.hpp"
#include "modwin/dynamics.hpp"

namespace modwin {

struct Shock {
    UserSet removed;
    std::vector<UserPrefs> added;
    int size() const { return int(removed.size() + added.size()); }
};

// Finite adversary class for added users: one speech point per region cut out
// by the existing interval endpoints, interval either the whole populated line
// or the degenerate cell [p,p], threshold from the existing values plus 0 and 1.
std::vector<UserPrefs> adversary_grid(const Population& pop);

std::vector<Shock> shock_space(const Population& pop, int k, const std::vector<UserPrefs>& grid);

// shocked S_0 = adopters minus the removed; added users start off-platform
Population apply_shock(const Population& pop, const Shock& shock);

struct RobustReport {
    int robust_size = 0;
    Shock worst;
    std::size_t shocks_considered = 0;  // after dropping banned additions
    std::size_t shocks_evaluated = 0;   // after merging isomorphic shocks
};

RobustReport robust_size(const Population& pop, const Window& w, int k, unsigned jobs = 1,
                         const EngineCaps& caps = EngineCaps::from_env());

int robust_trim_count(const Rational& theta, int k);

struct FreqUser {
    UserPrefs prefs;
    int f = 1;
};

struct FreqPopulation {
    std::vector<FreqUser> users;
    UserSet initial_adopters;
    long total() const;
};

Population expand_frequencies(const FreqPopulation& fp);
long lcc_variable_frequency_oracle(const FreqPopulation& fp);

}  // namespace modwin
