#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modwin/rational.hpp"

namespace modwin {

struct ThresholdSpec {
    enum class Kind { Direct, FromDisutility };
    Kind kind = Kind::Direct;
    Rational theta{1};  // Direct
    Rational b{0};      // FromDisutility
    Rational lambda{0};

    static ThresholdSpec direct(Rational theta);
    static ThresholdSpec from_disutility(Rational b, Rational lambda);
    bool is_direct() const { return kind == Kind::Direct; }
};

Rational threshold_value(const ThresholdSpec& spec);

struct UserPrefs {
    Rational left, right, speech;
    ThresholdSpec threshold;
};

using UserSet = std::vector<int>;  // sorted, unique ids

struct Population {
    std::vector<UserPrefs> users;
    UserSet initial_adopters;
    int size() const { return int(users.size()); }
};

struct Stack {
    UserPrefs prefs;
    int count = 1;
    int initial_on = 0;
};

struct StackedPopulation {
    std::vector<Stack> stacks;
    int size() const;
    // users of stack s occupy a contiguous id range; the first initial_on of
    // each range are the initial adopters
    Population expand() const;
    int first_id(int stack) const;
};

// Closed interval, either side may be infinite; "empty" admits nobody.
struct Window {
    std::optional<Rational> lo, hi;
    bool empty = false;

    static Window all() { return {}; }
    static Window closed(Rational a, Rational b);
    static Window none() {
        Window w;
        w.empty = true;
        return w;
    }
    bool contains(const Rational& p) const;
    bool contains(const Window& o) const;
    bool is_all() const { return !empty && !lo && !hi; }
    std::string str() const;
    friend bool operator==(const Window&, const Window&) = default;
};

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool compatible(const UserPrefs& viewer, const Rational& speech_point);
Rational utility(int i, const UserSet& on_platform, const Population& pop);
bool willing(int i, const UserSet& on_platform, const Population& pop);
bool mutually_compatible(int i, int j, const Population& pop);
bool is_compatible_set(const UserSet& s, const Population& pop);

// fraction compat/total >= theta, exact; total == 0 counts as willing
bool meets_threshold(long long compat, long long total, const Rational& theta);

std::vector<std::string> validate(const Population& pop);
void require_valid(const Population& pop);
std::vector<std::string> validate(const StackedPopulation& pop);

}  // namespace modwin
