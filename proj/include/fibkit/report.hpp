#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fibkit/verify.hpp"

namespace fibkit::report {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// {version, identity, paper_tag, mode, grid, total, status, failures, elapsed_ms}.
/// Bigints are decimal strings. With include_timing = false the elapsed_ms
/// field is null, making the document a pure function of the inputs.
Json to_json(const verify::VerifyReport& r, bool include_timing = true);

/// Several reports plus an overall status.
Json to_json(const std::vector<verify::VerifyReport>& reports, bool include_timing = true);

/// Header "identity,point,seed,lhs,rhs,status" followed by one row per failure,
/// or a single PASS row for a passing report.
std::string csv_header();
std::string to_csv_rows(const verify::VerifyReport& r);

std::string to_human(const verify::VerifyReport& r, std::size_t max_failures = 10);

std::string point_text(const verify::Assignment& a);
std::string seed_text(const seq::Seed& s);

} // namespace fibkit::report
