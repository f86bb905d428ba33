#pragma once

#include <utility>
#include <vector>

#include "modwin/core.hpp"
#include "modwin/dynamics.hpp"

namespace modwin {

struct IdeologicalPlatform {
    Window interval;
    Rational d{1};
};

struct WindowSearchReport {
    Window best_window;
    Rational objective_value{0};
    std::vector<std::pair<Window, Rational>> per_candidate;
};

std::vector<Window> candidate_windows(const Population& pop);
std::vector<Window> candidate_windows(const StackedPopulation& pop);

WindowSearchReport best_guaranteed_window(const Population& pop, unsigned jobs = 1,
                                          const EngineCaps& caps = EngineCaps::from_env());
WindowSearchReport best_guaranteed_window(const StackedPopulation& pop, unsigned jobs = 1,
                                          const EngineCaps& caps = EngineCaps::from_env());

Rational platform_utility(const UserSet& state, const IdeologicalPlatform& platform, const Population& pop);

// worst-case platform utility over fair-closed SCC states for a fixed window
Rational ideological_value(const Population& pop, const Window& w, const IdeologicalPlatform& platform,
                           const EngineCaps& caps = EngineCaps::from_env());
Rational ideological_value(const StackedPopulation& pop, const Window& w, const IdeologicalPlatform& platform,
                           const EngineCaps& caps = EngineCaps::from_env());

WindowSearchReport best_ideological_window(const Population& pop, const IdeologicalPlatform& platform,
                                           unsigned jobs = 1, const EngineCaps& caps = EngineCaps::from_env());
WindowSearchReport best_ideological_window(const StackedPopulation& pop, const IdeologicalPlatform& platform,
                                           unsigned jobs = 1, const EngineCaps& caps = EngineCaps::from_env());

// argmax with ties toward narrower, then leftmost windows
WindowSearchReport pick_best(std::vector<std::pair<Window, Rational>> per_candidate);

}  // namespace modwin
