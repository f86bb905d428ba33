#include <cstdlib>
#include <fstream>
#include <iostream>
#include <variant>

#include "CLI11.hpp"
#include "modwin/extensions.hpp"
#include "modwin/io.hpp"
#include "modwin/lcc.hpp"
#include "modwin/policy.hpp"
#include "modwin/scenarios.hpp"

using namespace modwin;
namespace sc = modwin::scenarios;
using io::json;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input, scenario, out, format = "json";
    std::uint64_t seed = 0;
    long horizon = 1000;
    unsigned jobs = 1;
    std::optional<long long> state_cap;
    // scenario parameters
    int n = 0, M = 95, u = 3;
    std::string theta, eps, d, b, lambda, lambda_fine, regime = "proportion", variant = "coarse";
    std::vector<std::string> w1, w2;
    // command parameters
    std::vector<std::string> window, platform_interval;
    std::string method = "auto", engine = "auto", objective = "guaranteed", schedule = "round-robin";
    std::vector<int> order;
    int k = 1, m = 10, focus = 0;
    bool oracle = false, simulate = false;
    std::string emit;
};

using Input = std::variant<Population, StackedPopulation, CompetitionConfig, StackedCompetition>;

Rational param(const std::string& s, Rational fallback) { return s.empty() ? fallback : Rational::parse(s); }

int param_n(const Options& o, int fallback) { return o.n > 0 ? o.n : fallback; }

Window window_arg(const std::vector<std::string>& v) {
    if (v.empty()) return Window::all();
    if (v.size() == 1) {
        if (v[0] == "empty") return Window::none();
        if (v[0] == "all") return Window::all();
        throw usage_error("window takes two endpoints, 'empty' or 'all'");
    }
    return io::window(json::array({v[0], v[1]}));
}

sc::Regime regime(const Options& o) {
    if (o.regime == "proportion") return sc::Regime::Proportion;
    if (o.regime == "utility") return sc::Regime::Utility;
    throw usage_error("regime must be proportion or utility");
}

Input scenario_input(const Options& o) {
    const std::string& s = o.scenario;
    if (s == "five-user") return sc::five_user();
    if (s == "trolls") return sc::trolls(param_n(o, 12), param(o.theta, Rational(1, 2)));
    if (s == "ideological") return sc::ideological(param_n(o, 20), param(o.d, 1)).pop;
    if (s == "personalization-gap") {
        auto g = sc::personalization_gap(param(o.b, 1), param(o.lambda, 1), param(o.lambda_fine, Rational(3, 5)));
        if (o.variant == "coarse") return g.coarse;
        if (o.variant == "fine") return g.fine;
        throw usage_error("variant must be coarse or fine");
    }
    if (s == "insurgency") return sc::insurgency(param_n(o, 40), param(o.eps, Rational(1, 10)));
    if (s == "incumbency") {
        std::optional<Rational> gamma;
        return sc::incumbency(o.M, o.u, window_arg(o.w1), window_arg(o.w2), gamma);
    }
    if (s == "cycling-single") return sc::cycling_single(param_n(o, 20));
    if (s == "cycling-multi") return sc::cycling_multi(param_n(o, 30), regime(o));
    if (s == "robust-family") return sc::robust_family(param_n(o, 9), param(o.theta, Rational(1, 2)));
    if (s == "adversaries") return sc::adversaries_example();
    if (s == "theta-upper-bound") {
        Rational th = param(o.theta, Rational(3, 4));
        return sc::theta_upper_bound(th, o.n > 0 ? o.n : sc::theta_upper_bound_smallest_n(th));
    }
    if (s == "one-sided-random") return sc::one_sided_random(param_n(o, 8), param(o.theta, Rational(1, 2)), o.seed);
    if (s == "mutual-random") return sc::mutual_random(param_n(o, 8), param(o.b, 1), param(o.lambda, 1), o.seed);
    throw usage_error("unknown scenario '" + s + "'");
}

Input load(const Options& o) {
    if (o.input.empty() == o.scenario.empty()) throw usage_error("give exactly one of --input or --scenario");
    if (!o.scenario.empty()) return scenario_input(o);
    json j = io::read_file(o.input);
    if (j.contains("platforms")) {
        if (io::is_stacked(j)) return io::stacked_competition(j);
        return io::competition(j);
    }
    if (io::is_stacked(j)) return io::stacked(j);
    return io::population(j);
}

void check(const std::vector<std::string>& violations) {
    if (violations.empty()) return;
    std::string msg;
    for (auto& v : violations) msg += (msg.empty() ? "" : "; ") + v;
    throw validation_error(msg);
}

void check(const Input& in) {
    std::visit([](const auto& x) { check(validate(x)); }, in);
}

Population flat(const Input& in) {
    if (auto p = std::get_if<Population>(&in)) return *p;
    if (auto s = std::get_if<StackedPopulation>(&in)) return s->expand();
    throw usage_error("this command needs a single-platform population");
}

CompetitionConfig flat_competition(const Input& in) {
    if (auto c = std::get_if<CompetitionConfig>(&in)) return *c;
    if (auto s = std::get_if<StackedCompetition>(&in)) return s->expand();
    throw usage_error("this command needs a competition config");
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw io::input_error("cannot write " + o.out);
    f << text;
}

void emit(const Options& o, const json& j) { emit(o, j.dump(2) + "\n"); }

void summary(const std::string& s) { std::cerr << s << "\n"; }

Schedule make_schedule(const Options& o, const Input& in, int actors) {
    if (o.schedule == "round-robin") return o.order.empty() ? Schedule::round_robin(actors) : Schedule::round_robin(o.order);
    if (o.schedule == "random") return Schedule::seeded_random(o.seed);
    if (o.schedule == "cyclic") return Schedule::cyclic(o.order);
    if (o.schedule == "blocks") {
        std::vector<int> counts;
        if (auto s = std::get_if<StackedPopulation>(&in)) counts = sc::stack_counts(*s);
        else if (auto c = std::get_if<StackedCompetition>(&in)) counts = sc::stack_counts(*c);
        else throw usage_error("blocks schedule needs a stacked input");
        std::vector<int> order = o.order;
        if (order.empty()) {
            for (int s = 0; s < int(counts.size()); ++s) order.push_back(s);
            // the utility-regime cycling example revisits the middle stacks
            if (o.scenario == "cycling-multi" && o.regime == "utility") order = {0, 1, 2, 3, 1, 2};
        }
        return sc::block_schedule(counts, order);
    }
    throw usage_error("schedule must be round-robin, random, cyclic or blocks");
}

int cmd_simulate(const Options& o) {
    Input in = load(o);
    check(in);
    Population pop = flat(in);
    Schedule s = make_schedule(o, in, pop.size());
    Trace t = simulate(pop, Policy::fixed(window_arg(o.window)), s, o.horizon);
    summary("simulated " + std::to_string(t.steps.size()) + " steps, final size " +
            std::to_string(t.steps.empty() ? t.initial.size() : t.steps.back().state.size()));
    if (o.format == "csv") emit(o, io::trace_csv(t));
    else emit(o, io::to_json(t));
    return 0;
}

int cmd_lcc(const Options& o) {
    Population pop = flat([&] {
        Input in = load(o);
        check(in);
        return in;
    }());
    LccResult r;
    if (o.method == "exact" || o.method == "auto") r = lcc_exact(pop);
    else if (o.method == "theta-one") r = lcc_theta_one(pop);
    else if (o.method == "core") r = mutually_compatible_core(pop);
    else if (o.method == "one-sided") r = lcc_one_sided(pop);
    else throw usage_error("method must be exact, theta-one, core or one-sided");
    summary("LCC size " + std::to_string(r.size) + " (" + r.method + ")");
    emit(o, io::to_json(r));
    return 0;
}

bool use_quotient(const Options& o, const Input& in) {
    if (o.engine == "flat") return false;
    if (o.engine == "quotient") return true;
    if (o.engine != "auto") throw usage_error("engine must be auto, flat or quotient");
    return std::holds_alternative<StackedPopulation>(in) || std::holds_alternative<StackedCompetition>(in);
}

int cmd_fair_limit(const Options& o) {
    Input in = load(o);
    check(in);
    Window w = window_arg(o.window);
    FairLimitReport r;
    if (use_quotient(o, in)) {
        auto s = std::get_if<StackedPopulation>(&in);
        if (!s) throw usage_error("quotient engine needs a stacked population");
        r = fair_limit_min_quotient(*s, w);
    } else {
        r = fair_limit_min(flat(in), w);
    }
    summary("fair-limit minimum size " + std::to_string(r.min_size) + " over " +
            std::to_string(r.num_fair_closed_sccs) + " fair-closed SCCs");
    emit(o, io::to_json(r));
    return 0;
}

int cmd_window_opt(const Options& o) {
    Input in = load(o);
    check(in);
    WindowSearchReport r;
    if (o.objective == "guaranteed") {
        if (auto s = std::get_if<StackedPopulation>(&in); s && o.engine != "flat") r = best_guaranteed_window(*s, o.jobs);
        else r = best_guaranteed_window(flat(in), o.jobs);
    } else if (o.objective == "ideological") {
        IdeologicalPlatform plat;
        if (o.scenario == "ideological" && o.platform_interval.empty())
            plat = sc::ideological(param_n(o, 20), param(o.d, 1)).platform;
        else plat = {window_arg(o.platform_interval), param(o.d, 1)};
        if (auto s = std::get_if<StackedPopulation>(&in); s && o.engine != "flat")
            r = best_ideological_window(*s, plat, o.jobs);
        else r = best_ideological_window(flat(in), plat, o.jobs);
    } else {
        throw usage_error("objective must be guaranteed or ideological");
    }
    summary("best window " + r.best_window.str() + " with value " + r.objective_value.str());
    emit(o, io::to_json(r));
    return 0;
}

int cmd_sample_window(const Options& o) {
    Input in = load(o);
    check(in);
    Population pop = flat(in);
    Window w = sample_window(pop, o.m, o.seed);
    json j{{"window", io::to_json(w)}, {"m", o.m}, {"seed", o.seed}};
    if (o.oracle) {
        int size = std::holds_alternative<StackedPopulation>(in)
                       ? fair_limit_min_quotient(std::get<StackedPopulation>(in), w).min_size
                       : fair_limit_min(pop, w).min_size;
        j["fair_size"] = size;
    }
    summary("sampled window " + w.str());
    emit(o, j);
    return 0;
}

int cmd_compete(const Options& o) {
    Input in = load(o);
    check(in);
    if (o.simulate) {
        CompetitionConfig cfg = flat_competition(in);
        MultiTrace t = multi_simulate(cfg, make_schedule(o, in, cfg.num_users()), o.horizon);
        summary("simulated " + std::to_string(t.steps.size()) + " steps");
        if (o.format == "csv") emit(o, io::trace_csv(t));
        else emit(o, io::to_json(t));
        return 0;
    }
    MultiFairLimitReport r;
    if (use_quotient(o, in)) {
        auto s = std::get_if<StackedCompetition>(&in);
        if (!s) throw usage_error("quotient engine needs a stacked competition config");
        r = multi_fair_limit_quotient(*s, o.focus);
    } else {
        r = multi_fair_limit(flat_competition(in), o.focus);
    }
    std::string sizes;
    for (int x : r.per_platform_min_sizes) sizes += " " + std::to_string(x);
    summary("platform sizes at the minimizing fair-closed state:" + sizes);
    emit(o, io::to_json(r));
    return 0;
}

int cmd_robust(const Options& o) {
    Input in = load(o);
    check(in);
    RobustReport r = robust_size(flat(in), window_arg(o.window), o.k, o.jobs);
    summary("robust size " + std::to_string(r.robust_size) + " after " + std::to_string(r.shocks_evaluated) +
            " distinct shocks");
    emit(o, json{{"k", o.k},
                 {"window", io::to_json(window_arg(o.window))},
                 {"robust_size", r.robust_size},
                 {"worst", io::to_json(r.worst)},
                 {"shocks_considered", r.shocks_considered},
                 {"shocks_evaluated", r.shocks_evaluated}});
    return 0;
}

int cmd_scenario(const Options& o) {
    Input in = scenario_input(o);
    json j = std::visit([](const auto& x) { return json(io::to_json(x)); }, in);
    Options out = o;
    if (!o.emit.empty()) out.out = o.emit;
    summary("scenario " + o.scenario);
    emit(out, j);
    return 0;
}

int cmd_freq_expand(const Options& o) {
    if (o.input.empty()) throw usage_error("freq-expand needs --input");
    FreqPopulation fp = io::freq_population(io::read_file(o.input));
    Population pop = expand_frequencies(fp);
    check(validate(pop));
    json j{{"population", io::to_json(pop)}};
    if (o.oracle) {
        j["oracle_size"] = lcc_variable_frequency_oracle(fp);
        j["expanded_lcc_size"] = lcc_exact(pop).size;
    }
    summary("expanded to " + std::to_string(pop.size()) + " users");
    emit(o, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Content moderation window analysis"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c) {
        c->add_option("--input,-i", o.input, "Population or config JSON");
        c->add_option("--scenario", o.scenario, "Built-in scenario name");
        c->add_option("--seed", o.seed, "Random seed");
        c->add_option("--horizon", o.horizon, "Simulation steps");
        c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        c->add_option("--out,-o", o.out, "Write the report here instead of stdout");
        c->add_option("--jobs,-j", o.jobs, "Parallel jobs");
        c->add_option("--state-cap", o.state_cap, "Engine state cap (overrides MODWIN_STATE_CAP)");
        c->add_option("--n", o.n, "Scenario size");
        c->add_option("--theta", o.theta);
        c->add_option("--eps", o.eps);
        c->add_option("--d", o.d);
        c->add_option("--b", o.b);
        c->add_option("--lambda", o.lambda);
        c->add_option("--lambda-fine", o.lambda_fine);
        c->add_option("--M", o.M);
        c->add_option("--u", o.u);
        c->add_option("--w1", o.w1)->expected(1, 2);
        c->add_option("--w2", o.w2)->expected(1, 2);
        c->add_option("--regime", o.regime);
        c->add_option("--variant", o.variant, "personalization-gap: coarse or fine");
    };
    auto sub = [&](const char* name, const char* desc) {
        auto c = app.add_subcommand(name, desc);
        common(c);
        return c;
    };

    auto simulate = sub("simulate", "Simulate single-platform dynamics");
    simulate->add_option("--window", o.window)->expected(1, 2);
    simulate->add_option("--schedule", o.schedule);
    simulate->add_option("--order", o.order);

    auto lcc = sub("lcc", "Largest compatible community");
    lcc->add_option("--method", o.method);

    auto wopt = sub("window-opt", "Search for the best moderation window");
    wopt->add_option("--objective", o.objective);
    wopt->add_option("--platform-interval", o.platform_interval)->expected(1, 2);
    wopt->add_option("--engine", o.engine);

    auto sample = sub("sample-window", "Window from a random sample of users");
    sample->add_option("--m", o.m);
    sample->add_flag("--evaluate", o.oracle, "Also report the fair-limit size of the sampled window");

    auto compete = sub("compete", "Multi-platform competition");
    compete->add_option("--focus", o.focus);
    compete->add_option("--engine", o.engine);
    compete->add_flag("--simulate", o.simulate);
    compete->add_option("--schedule", o.schedule);
    compete->add_option("--order", o.order);

    auto robust = sub("robust", "Size guaranteed under population shocks");
    robust->add_option("--k", o.k);
    robust->add_option("--window", o.window)->expected(1, 2);

    auto scenario = app.add_subcommand("scenario", "Emit a built-in scenario as JSON");
    common(scenario);
    scenario->add_option("name", o.scenario)->required();
    scenario->add_option("--emit", o.emit, "Output file");

    auto fair = sub("fair-limit", "Minimum liminf size over fair schedules");
    fair->add_option("--window", o.window)->expected(1, 2);
    fair->add_option("--engine", o.engine);

    auto freq = sub("freq-expand", "Expand a variable-frequency population");
    freq->add_flag("--oracle", o.oracle, "Compare against the capped-frequency oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (o.state_cap) setenv("MODWIN_STATE_CAP", std::to_string(*o.state_cap).c_str(), 1);
        if (*simulate) return cmd_simulate(o);
        if (*lcc) return cmd_lcc(o);
        if (*wopt) return cmd_window_opt(o);
        if (*sample) return cmd_sample_window(o);
        if (*compete) return cmd_compete(o);
        if (*robust) return cmd_robust(o);
        if (*scenario) return cmd_scenario(o);
        if (*fair) return cmd_fair_limit(o);
        if (*freq) return cmd_freq_expand(o);
    } catch (const cap_exceeded& e) {
        std::cerr << "engine cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
