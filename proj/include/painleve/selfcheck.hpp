#pragma once

#include "painleve/types.hpp"

#include <json.hpp>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace painleve {

// One asserted comparison. relation is one of "<", ">", "==", "in"; for "in" the accepted
// interval is [tolerance, upper].
struct Check {
    std::string operation;
    std::string quantity;
    std::optional<double> value;  // empty for wall-clock checks, which stay out of the report
    double tolerance = 0.0;
    std::optional<double> upper;
    std::string relation;
    bool passed = false;
};

Check check_less(std::string operation, std::string quantity, double value, double tol);
Check check_greater(std::string operation, std::string quantity, double value, double tol);
Check check_equal(std::string operation, std::string quantity, double value, double expected);
Check check_within(std::string operation, std::string quantity, double value, double lo, double hi);

struct CriterionResult {
    int id = 0;
    std::string name;
    std::vector<Check> checks;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    std::optional<std::string> error;  // numerical error that aborted the criterion

    bool passed() const;
};

inline constexpr int kCriterionCount = 14;

const char* criterion_name(int id);

// Each criterion draws from its own mt19937_64 seeded with seed + id, so subsets reproduce.
CriterionResult run_criterion(int id, std::uint64_t seed);

struct SelfcheckReport {
    std::uint64_t seed = 0;
    std::vector<CriterionResult> criteria;

    bool all_passed() const;
    bool any_error() const;
};

// Empty ids runs all criteria.
SelfcheckReport run_selfcheck(std::uint64_t seed, const std::vector<int>& ids = {});

nlohmann::ordered_json to_json(const Check& c);
nlohmann::ordered_json to_json(const CriterionResult& r);
nlohmann::ordered_json to_json(const SelfcheckReport& r);

// Complex numbers as [re, im].
nlohmann::ordered_json complex_json(std::complex<double> z);

}  // namespace painleve
