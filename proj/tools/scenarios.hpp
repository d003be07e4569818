#pragma once

#include <gmt/io.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace gmt::cli {

using Json = io::Json;

/// Named pass/fail assertions of a report.
class Checks
{
public:
    void at_most(const std::string& name, double value, double bound);
    void at_least(const std::string& name, double value, double bound);
    void within(const std::string& name, double value, double lo, double hi);
    void holds(const std::string& name, bool ok);

    bool pass() const { return m_pass; }
    const Json& json() const { return m_list; }

private:
    Json m_list = Json::array();
    bool m_pass = true;
};

/// Attaches the checks and the verdict to a report.
Json finish(Json report, const Checks& checks);

struct ScenarioInfo
{
    std::string name;
    std::string summary;
};

const std::vector<ScenarioInfo>& scenarios();
bool is_scenario(const std::string& name);

inline constexpr int kMaxKochLevel = 4;

/// Parameters shared by the built-in scenarios.
struct Options
{
    std::uint64_t seed = 42;
    double identity_tol = 1e-9;
    double agreement_tol = 1e-6;
    int koch_level = kMaxKochLevel;
    std::vector<double> schedule = kTransportSchedule;
    double final_eps = kTransportFinalEps;
};

/// Throws on parameters outside their documented ranges.
void validate(const Options& o);

/// Report with "scenario", "seed", computed quantities, "checks" and "pass".
Json run_scenario(const std::string& name, const Options& o);

/// Closest candidate by edit distance (empty when nothing is close).
std::string nearest_match(const std::string& name, const std::vector<std::string>& candidates);

} // namespace gmt::cli
