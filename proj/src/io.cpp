#include "modwin/io.hpp"

#include <fstream>
#include <sstream>

namespace modwin::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw input_error(what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        bad("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
    }
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

Rational rational(const json& j) {
    try {
        if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
        if (j.is_string()) return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        bad(e.what());
    }
    bad("expected a rational string such as \"7/2\", got " + j.dump());
}

json to_json(const Rational& r) { return r.str(); }

Window window(const json& j) {
    if (j.is_string() && j.get<std::string>() == "empty") return Window::none();
    if (j.is_null()) return Window::all();
    if (!j.is_array() || j.size() != 2) bad("window must be [lo, hi], \"empty\" or null");
    Window w;
    auto end = [&](const json& e, const char* inf) -> std::optional<Rational> {
        if (e.is_string() && e.get<std::string>() == inf) return std::nullopt;
        return rational(e);
    };
    w.lo = end(j[0], "-inf");
    w.hi = end(j[1], "inf");
    if (w.lo && w.hi && *w.hi < *w.lo) bad("window with lo > hi");
    return w;
}

json to_json(const Window& w) {
    if (w.empty) return "empty";
    return json::array({w.lo ? json(w.lo->str()) : json("-inf"), w.hi ? json(w.hi->str()) : json("inf")});
}

UserPrefs user(const json& j) {
    UserPrefs u;
    u.left = rational(field(j, "l"));
    u.speech = rational(field(j, "p"));
    u.right = rational(field(j, "r"));
    if (j.contains("theta")) u.threshold = ThresholdSpec::direct(rational(j.at("theta")));
    else if (j.contains("b")) u.threshold = ThresholdSpec::from_disutility(rational(j.at("b")), rational(field(j, "lambda")));
    else bad("user needs either theta or b and lambda");
    return u;
}

json to_json(const UserPrefs& u) {
    json j{{"l", u.left.str()}, {"p", u.speech.str()}, {"r", u.right.str()}};
    if (u.threshold.is_direct()) j["theta"] = u.threshold.theta.str();
    else {
        j["b"] = u.threshold.b.str();
        j["lambda"] = u.threshold.lambda.str();
    }
    return j;
}

Population population(const json& j) {
    Population p;
    for (auto& u : field(j, "users")) p.users.push_back(user(u));
    if (j.contains("initial_adopters"))
        for (auto& a : j.at("initial_adopters")) {
            if (!a.is_number_integer()) bad("initial adopters must be integer ids");
            p.initial_adopters.push_back(a.get<int>());
        }
    std::sort(p.initial_adopters.begin(), p.initial_adopters.end());
    return p;
}

json to_json(const Population& p) {
    json users = json::array();
    for (auto& u : p.users) users.push_back(to_json(u));
    return json{{"users", users}, {"initial_adopters", p.initial_adopters}};
}

bool is_stacked(const json& j) { return j.is_object() && j.contains("stacks"); }

StackedPopulation stacked(const json& j) {
    StackedPopulation p;
    for (auto& s : field(j, "stacks")) {
        Stack st;
        st.prefs = user(s);
        st.count = field(s, "count").get<int>();
        st.initial_on = s.value("initial_on", 0);
        p.stacks.push_back(st);
    }
    return p;
}

json to_json(const StackedPopulation& p) {
    json stacks = json::array();
    for (auto& s : p.stacks) {
        json j = to_json(s.prefs);
        j["count"] = s.count;
        j["initial_on"] = s.initial_on;
        stacks.push_back(j);
    }
    return json{{"stacks", stacks}};
}

namespace {

std::vector<Platform> platforms(const json& j) {
    std::vector<Platform> out;
    for (auto& p : field(j, "platforms")) {
        Platform pl;
        pl.window = p.contains("window") ? window(p.at("window")) : Window::all();
        if (p.contains("lambda")) pl.lambda = rational(p.at("lambda"));
        if (p.contains("lambdas"))
            for (auto& l : p.at("lambdas")) pl.lambda_per_user.push_back(rational(l));
        out.push_back(pl);
    }
    return out;
}

json platforms_json(const std::vector<Platform>& ps) {
    json out = json::array();
    for (auto& p : ps) {
        json j{{"window", to_json(p.window)}};
        if (p.lambda) j["lambda"] = p.lambda->str();
        if (!p.lambda_per_user.empty()) {
            json ls = json::array();
            for (auto& l : p.lambda_per_user) ls.push_back(l.str());
            j["lambdas"] = ls;
        }
        out.push_back(j);
    }
    return out;
}

std::optional<Rational> bandwidth(const json& j) {
    if (j.is_null() || (j.is_string() && j.get<std::string>() == "inf")) return std::nullopt;
    return rational(j);
}

json bandwidth_json(const std::optional<Rational>& g) { return g ? json(g->str()) : json("inf"); }

}  // namespace

CompetitionConfig competition(const json& j) {
    CompetitionConfig c;
    Population p = population(j);
    c.users = p.users;
    c.platforms = platforms(j);
    c.unnormalized = j.value("unnormalized", false);
    int n = c.num_users();
    if (j.contains("bandwidths")) {
        for (auto& g : j.at("bandwidths")) c.bandwidth.push_back(bandwidth(g));
    } else {
        c.bandwidth.assign(n, j.contains("bandwidth") ? bandwidth(j.at("bandwidth")) : std::nullopt);
    }
    if (j.contains("initial_assignment")) {
        for (auto& a : j.at("initial_assignment")) c.initial.push_back(a.is_null() ? kNone : a.get<int>());
    } else {
        // initial adopters start on the first platform that admits them
        c.initial.assign(n, kNone);
        for (int a : p.initial_adopters) {
            if (a < 0 || a >= n) bad("adopter out of range: " + std::to_string(a));
            for (int k = 0; k < c.num_platforms(); ++k)
                if (c.eligible(a, k)) {
                    c.initial[a] = k;
                    break;
                }
        }
    }
    return c;
}

json to_json(const CompetitionConfig& c) {
    json users = json::array();
    for (auto& u : c.users) users.push_back(to_json(u));
    json bw = json::array(), init = json::array();
    for (auto& g : c.bandwidth) bw.push_back(bandwidth_json(g));
    for (int a : c.initial) init.push_back(a == kNone ? json(nullptr) : json(a));
    json j{{"users", users}, {"platforms", platforms_json(c.platforms)}, {"bandwidths", bw}, {"initial_assignment", init}};
    if (c.unnormalized) j["unnormalized"] = true;
    return j;
}

StackedCompetition stacked_competition(const json& j) {
    StackedCompetition c;
    c.platforms = platforms(j);
    c.unnormalized = j.value("unnormalized", false);
    for (auto& s : field(j, "stacks")) {
        CompetitionStack st;
        st.prefs = user(s);
        st.count = field(s, "count").get<int>();
        st.bandwidth = s.contains("bandwidth") ? bandwidth(s.at("bandwidth")) : std::nullopt;
        for (auto& x : field(s, "initial")) st.initial.push_back(x.get<int>());
        c.stacks.push_back(st);
    }
    return c;
}

json to_json(const StackedCompetition& c) {
    json stacks = json::array();
    for (auto& s : c.stacks) {
        json j = to_json(s.prefs);
        j["count"] = s.count;
        j["bandwidth"] = bandwidth_json(s.bandwidth);
        j["initial"] = s.initial;
        stacks.push_back(j);
    }
    json j{{"stacks", stacks}, {"platforms", platforms_json(c.platforms)}};
    if (c.unnormalized) j["unnormalized"] = true;
    return j;
}

FreqPopulation freq_population(const json& j) {
    FreqPopulation fp;
    for (auto& u : field(j, "users")) fp.users.push_back({user(u), u.value("f", 1)});
    if (j.contains("initial_adopters"))
        for (auto& a : j.at("initial_adopters")) fp.initial_adopters.push_back(a.get<int>());
    std::sort(fp.initial_adopters.begin(), fp.initial_adopters.end());
    return fp;
}

json to_json(const Schedule& s) {
    switch (s.kind) {
        case Schedule::Kind::RoundRobin: return json{{"kind", "round_robin"}, {"order", s.cycle}};
        case Schedule::Kind::Cyclic: return json{{"kind", "cyclic"}, {"cycle", s.cycle}};
        case Schedule::Kind::Scripted: return json{{"kind", "scripted"}, {"prefix", s.prefix}, {"cycle", s.cycle}};
        case Schedule::Kind::SeededRandom: return json{{"kind", "seeded_random"}, {"seed", s.seed}};
    }
    return {};
}

Schedule schedule(const json& j) {
    std::string k = field(j, "kind").get<std::string>();
    if (k == "round_robin") return Schedule::round_robin(field(j, "order").get<std::vector<int>>());
    if (k == "cyclic") return Schedule::cyclic(field(j, "cycle").get<std::vector<int>>());
    if (k == "scripted")
        return Schedule::scripted(j.value("prefix", std::vector<int>{}), field(j, "cycle").get<std::vector<int>>());
    if (k == "seeded_random") return Schedule::seeded_random(field(j, "seed").get<std::uint64_t>());
    bad("unknown schedule kind '" + k + "'");
}

json to_json(const FairLimitReport& r) {
    json j{{"min_size", r.min_size},
           {"num_fair_closed_sccs", r.num_fair_closed_sccs},
           {"equilibria", r.equilibria},
           {"witness", to_json(r.witness)}};
    if (r.stack_level) j["stack_level"] = true;
    return j;
}

json to_json(const MultiFairLimitReport& r) {
    json eq = json::array();
    for (auto& e : r.equilibria) {
        if (r.stack_level) {
            eq.push_back(e);
            continue;
        }
        json a = json::array();
        for (int x : e) a.push_back(x == kNone ? json(nullptr) : json(x));
        eq.push_back(a);
    }
    json j{{"focus", r.focus},
           {"per_platform_min_sizes", r.per_platform_min_sizes},
           {"num_fair_closed_sccs", r.num_fair_closed_sccs},
           {"equilibria", eq},
           {"witness", to_json(r.witness)}};
    if (r.stack_level) j["stack_level"] = true;
    return j;
}

json to_json(const LccResult& r) {
    return json{{"method", r.method}, {"size", r.size}, {"members", r.members}};
}

json to_json(const WindowSearchReport& r) {
    json per = json::array();
    for (auto& [w, v] : r.per_candidate) per.push_back(json{{"window", to_json(w)}, {"value", v.str()}});
    return json{{"best_window", to_json(r.best_window)}, {"objective_value", r.objective_value.str()}, {"per_candidate", per}};
}

json to_json(const Trace& t) {
    json steps = json::array();
    for (auto& s : t.steps) {
        json j{{"t", s.t}, {"phase", s.phase}, {"actor", s.actor}, {"action", action_name(s.action)},
               {"size", s.state.size()}, {"state", s.state}};
        if (!s.forced_removed.empty()) j["forced_removed"] = s.forced_removed;
        steps.push_back(j);
    }
    return json{{"initial", t.initial}, {"steps", steps}};
}

std::string trace_csv(const Trace& t) {
    std::string out = "t,phase,actor,action,size\n";
    for (auto& s : t.steps)
        out += std::to_string(s.t) + "," + std::to_string(s.phase) + "," + std::to_string(s.actor) + "," +
               action_name(s.action) + "," + std::to_string(s.state.size()) + "\n";
    return out;
}

namespace {

json loc(int a) { return a == kNone ? json(nullptr) : json(a); }

std::string loc_str(int a) { return a == kNone ? "none" : std::to_string(a); }

}  // namespace

json to_json(const MultiTrace& t) {
    json steps = json::array();
    int k = 0;
    for (int a : t.initial) k = std::max(k, a + 1);
    for (auto& s : t.steps)
        for (int a : s.state) k = std::max(k, a + 1);
    for (auto& s : t.steps) {
        json st = json::array();
        for (int a : s.state) st.push_back(loc(a));
        steps.push_back(json{{"t", s.t}, {"actor", s.actor}, {"from", loc(s.from)}, {"to", loc(s.to)},
                             {"sizes", platform_sizes(s.state, k)}, {"state", st}});
    }
    json init = json::array();
    for (int a : t.initial) init.push_back(loc(a));
    return json{{"initial", init}, {"steps", steps}};
}

std::string trace_csv(const MultiTrace& t) {
    int k = 0;
    for (int a : t.initial) k = std::max(k, a + 1);
    for (auto& s : t.steps)
        for (int a : s.state) k = std::max(k, a + 1);
    std::string out = "t,actor,from,to";
    for (int j = 0; j < k; ++j) out += ",size_" + std::to_string(j);
    out += "\n";
    for (auto& s : t.steps) {
        out += std::to_string(s.t) + "," + std::to_string(s.actor) + "," + loc_str(s.from) + "," + loc_str(s.to);
        for (int x : platform_sizes(s.state, k)) out += "," + std::to_string(x);
        out += "\n";
    }
    return out;
}

json to_json(const Shock& s) {
    json added = json::array();
    for (auto& u : s.added) added.push_back(to_json(u));
    return json{{"removed", s.removed}, {"added", added}};
}

}  // namespace modwin::io
