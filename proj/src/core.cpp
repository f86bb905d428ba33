#include "modwin/core.hpp"

#include <algorithm>

namespace modwin {

ThresholdSpec ThresholdSpec::direct(Rational theta) {
    ThresholdSpec t;
    t.kind = Kind::Direct;
    t.theta = theta;
    return t;
}

ThresholdSpec ThresholdSpec::from_disutility(Rational b, Rational lambda) {
    ThresholdSpec t;
    t.kind = Kind::FromDisutility;
    t.b = b;
    t.lambda = lambda;
    return t;
}

Rational threshold_value(const ThresholdSpec& spec) {
    if (spec.is_direct()) return spec.theta;
    Rational lb = spec.lambda * spec.b;
    return lb / (Rational(1) + lb);
}

int StackedPopulation::size() const {
    int n = 0;
    for (auto& s : stacks) n += s.count;
    return n;
}

int StackedPopulation::first_id(int stack) const {
    int id = 0;
    for (int s = 0; s < stack; ++s) id += stacks[s].count;
    return id;
}

Population StackedPopulation::expand() const {
    Population pop;
    for (auto& s : stacks) {
        int base = pop.size();
        for (int k = 0; k < s.count; ++k) pop.users.push_back(s.prefs);
        for (int k = 0; k < s.initial_on; ++k) pop.initial_adopters.push_back(base + k);
    }
    return pop;
}

Window Window::closed(Rational a, Rational b) {
    if (b < a) throw std::invalid_argument("window with lo > hi");
    Window w;
    w.lo = a;
    w.hi = b;
    return w;
}

bool Window::contains(const Rational& p) const {
    if (empty) return false;
    if (lo && p < *lo) return false;
    if (hi && p > *hi) return false;
    return true;
}

bool Window::contains(const Window& o) const {
    if (o.empty) return true;
    if (empty) return false;
    if (lo && (!o.lo || *o.lo < *lo)) return false;
    if (hi && (!o.hi || *o.hi > *hi)) return false;
    return true;
}

std::string Window::str() const {
    if (empty) return "empty";
    return "[" + (lo ? lo->str() : std::string("-inf")) + "," + (hi ? hi->str() : std::string("inf")) + "]";
}

bool compatible(const UserPrefs& viewer, const Rational& p) {
    return viewer.left <= p && p <= viewer.right;
}

bool meets_threshold(long long compat, long long total, const Rational& theta) {
    if (total == 0) return true;
    return __int128(compat) * theta.den() >= __int128(theta.num()) * total;
}

Rational utility(int i, const UserSet& on, const Population& pop) {
    const auto& u = pop.users.at(i);
    if (u.threshold.is_direct())
        throw std::invalid_argument("raw utility needs a FromDisutility threshold (user " +
                                    std::to_string(i) + ")");
    long long c = 0, d = 0;
    for (int j : on) {
        if (j == i) continue;
        if (compatible(u, pop.users.at(j).speech)) ++c;
        else ++d;
    }
    return Rational(c) - u.threshold.lambda * u.threshold.b * Rational(d);
}

bool willing(int i, const UserSet& on, const Population& pop) {
    const auto& u = pop.users.at(i);
    long long c = 0, t = 0;
    for (int j : on) {
        if (j == i) continue;
        ++t;
        if (compatible(u, pop.users.at(j).speech)) ++c;
    }
    return meets_threshold(c, t, threshold_value(u.threshold));
}

bool mutually_compatible(int i, int j, const Population& pop) {
    if (i == j) throw std::invalid_argument("mutually_compatible needs distinct users");
    const auto& a = pop.users.at(i);
    const auto& b = pop.users.at(j);
    return compatible(a, b.speech) && compatible(b, a.speech);
}

bool is_compatible_set(const UserSet& s, const Population& pop) {
    return std::all_of(s.begin(), s.end(), [&](int i) { return willing(i, s, pop); });
}

namespace {

void check_user(const UserPrefs& u, const std::string& who, std::vector<std::string>& out) {
    if (u.left > u.right) out.push_back(who + ": interval left > right");
    if (!compatible(u, u.speech)) out.push_back(who + ": speech not in interval");
    const auto& t = u.threshold;
    if (t.is_direct()) {
        if (t.theta < Rational(0) || t.theta > Rational(1)) out.push_back(who + ": theta not in [0,1]");
    } else {
        if (t.b <= Rational(0)) out.push_back(who + ": b must be positive");
        if (t.lambda < Rational(0) || t.lambda > Rational(1)) out.push_back(who + ": lambda not in [0,1]");
    }
}

}  // namespace

std::vector<std::string> validate(const Population& pop) {
    std::vector<std::string> out;
    for (int i = 0; i < pop.size(); ++i) check_user(pop.users[i], "user " + std::to_string(i), out);
    for (int a : pop.initial_adopters)
        if (a < 0 || a >= pop.size()) out.push_back("adopter out of range: " + std::to_string(a));
    if (!std::is_sorted(pop.initial_adopters.begin(), pop.initial_adopters.end()) ||
        std::adjacent_find(pop.initial_adopters.begin(), pop.initial_adopters.end()) !=
            pop.initial_adopters.end())
        out.push_back("initial adopters must be sorted and unique");
    return out;
}

std::vector<std::string> validate(const StackedPopulation& pop) {
    std::vector<std::string> out;
    for (size_t s = 0; s < pop.stacks.size(); ++s) {
        const auto& st = pop.stacks[s];
        std::string who = "stack " + std::to_string(s);
        check_user(st.prefs, who, out);
        if (st.count < 1) out.push_back(who + ": count must be positive");
        if (st.initial_on < 0 || st.initial_on > st.count) out.push_back(who + ": initial_on out of range");
    }
    return out;
}

void require_valid(const Population& pop) {
    auto v = validate(pop);
    if (!v.empty()) throw validation_error(v.front());
}

}  // namespace modwin
