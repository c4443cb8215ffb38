#pragma once

#include <string>
#include <vector>

namespace widthspan {

struct CheckRow {
    std::string suite;
    std::string name;
    bool passed = true;
    std::string detail;
    bool informational = false;  // reported but never fails the suite
};

std::vector<CheckRow> verify_bandwidth(int jobs = 1);
std::vector<CheckRow> verify_cutwidth(int jobs = 1);
std::vector<CheckRow> verify_distribution(int jobs = 1);
std::vector<CheckRow> verify_dp(int jobs = 1);

/// `suite` is bandwidth, cutwidth, distribution, dp or all. Throws
/// ValidationError for any other name.
std::vector<CheckRow> run_suite(const std::string& suite, int jobs = 1);

/// Fixed-width table, one row per check.
std::string format_rows(const std::vector<CheckRow>& rows);
bool all_passed(const std::vector<CheckRow>& rows);

}  // namespace widthspan
