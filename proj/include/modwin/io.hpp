#pragma once

#include <string>

#include "json.hpp"
#include "modwin/competition.hpp"
#include "modwin/core.hpp"
#include "modwin/dynamics.hpp"
#include "modwin/extensions.hpp"
#include "modwin/lcc.hpp"
#include "modwin/policy.hpp"

namespace modwin::io {

using json = nlohmann::ordered_json;

// malformed input, with a human-readable location when known
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json parse_text(const std::string& text);  // throws input_error with line/column
json read_file(const std::string& path);

Rational rational(const json& j);
json to_json(const Rational& r);
Window window(const json& j);
json to_json(const Window& w);
UserPrefs user(const json& j);
json to_json(const UserPrefs& u);

Population population(const json& j);
json to_json(const Population& p);
StackedPopulation stacked(const json& j);
json to_json(const StackedPopulation& p);
bool is_stacked(const json& j);

CompetitionConfig competition(const json& j);
json to_json(const CompetitionConfig& c);
StackedCompetition stacked_competition(const json& j);
json to_json(const StackedCompetition& c);

FreqPopulation freq_population(const json& j);

json to_json(const Schedule& s);
Schedule schedule(const json& j);
json to_json(const FairLimitReport& r);
json to_json(const MultiFairLimitReport& r);
json to_json(const LccResult& r);
json to_json(const WindowSearchReport& r);
json to_json(const Trace& t);
std::string trace_csv(const Trace& t);
json to_json(const MultiTrace& t);
std::string trace_csv(const MultiTrace& t);
json to_json(const Shock& s);

}  // namespace modwin::io
