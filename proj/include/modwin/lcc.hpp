#pragma once

#include <string>

#include "modwin/core.hpp"
#include "modwin/dynamics.hpp"

namespace modwin {

struct LccResult {
    UserSet members;
    int size = 0;
    std::string method;  // brute_force, theta_one, core, one_sided
};

LccResult lcc_exact(const Population& pop, const EngineCaps& caps = EngineCaps::from_env());
LccResult lcc_theta_one(const Population& pop);
LccResult mutually_compatible_core(const Population& pop);
Window core_window(const Population& pop);
LccResult lcc_one_sided(const Population& pop);

struct DynamicWindowPlan {
    Window phase1;
    UserSet target;  // S*: advance once all of it is on the platform
    Window phase2;
    Policy policy() const;
};

DynamicWindowPlan dynamic_window_one_sided(const Population& pop);

Window sample_window(const Population& pop, int m, std::uint64_t seed);
double sampling_bound(long n, long m, const Rational& theta_min, long s_opt, const Rational& beta);

Rational theta_min(const Population& pop);

}  // namespace modwin
