#ifndef DJET_VERIFY_HPP
#define DJET_VERIFY_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace djet {

/// Outcome of one verification suite.
struct SuiteResult {
    std::string suite;
    long checks = 0;
    long failures = 0;
    std::vector<std::string> failed; // first few failed check labels

    bool passed() const { return failures == 0; }
};

/// Names of the available suites, in execution order.
const std::vector<std::string>& verify_suite_names();

/// Runs the invariant suites at desk scale. `only` restricts to a single
/// suite by name ("" runs all); unknown names are a usage error. Fully
/// deterministic for a fixed seed.
std::vector<SuiteResult> run_verify(unsigned long long seed,
                                    const std::string& only = "");

nlohmann::json to_json(const std::vector<SuiteResult>& results,
                       unsigned long long seed);

} // namespace djet

#endif
