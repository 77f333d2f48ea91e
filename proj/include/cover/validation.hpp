#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cover/scenario_io.hpp"

namespace cover::validation {

using cli::Scenario;

enum class Suite
{
    quick,
    full,
};

//! One acceptance check. `value` is compared with `limit` using `relation`.
struct Check
{
    std::string id;
    std::string description;
    bool pass = false;
    double value = 0;
    double limit = 0;
    std::string relation;  ///< "<=", ">=" or ">"
    std::string detail;
};

//! Sample sizes and grid steps for one suite.
struct Budget
{
    std::int64_t downlink_trials;
    std::int64_t uplink_trials;
    std::int64_t population_trials;
    std::int64_t ks_samples;
    std::int64_t link_draws;
    double altitude_step;
    int kernel_tuples;

    static Budget of(Suite suite);
};

//! CSV table accumulated by a check.
struct Table
{
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string csv() const;
};

struct CheckOutput
{
    Check check;
    std::vector<Table> tables;
};

CheckOutput check_downlink_equivalence(const Scenario& base, const Budget& budget);
CheckOutput check_uplink_equivalence(const Scenario& base, const Budget& budget);
CheckOutput check_population_equivalence(const Scenario& base, const Budget& budget);
CheckOutput check_altitude_shape(const Scenario& base, const Budget& budget);
CheckOutput check_noise_negligible(const Scenario& base, const Budget& budget);
CheckOutput check_nlos_negligible(const Scenario& base, const Budget& budget);
CheckOutput check_kernels(const Scenario& base, const Budget& budget);
CheckOutput check_distributions(const Scenario& base, const Budget& budget);
CheckOutput check_link_success(const Scenario& base, const Budget& budget);
CheckOutput check_unified_form(const Scenario& base, const Budget& budget);

struct SuiteResult
{
    std::vector<Check> checks;
    bool all_pass() const;
};

/*!
 * Run every check on top of `base` and write report.txt plus one CSV per
 * table into `out_dir`. Output depends only on the scenario and its seed.
 * Progress lines (with timings) go to `progress` when given.
 */
SuiteResult run_suite(const Scenario& base, Suite suite, const std::filesystem::path& out_dir,
                      std::ostream* progress = nullptr);

std::string format_report(const SuiteResult& result, Suite suite, const Scenario& base);

}  // namespace cover::validation
