#pragma once

// The reproduction suite behind `meanlab suite --all`: every identity,
// falsification and inequality chain, turned into report records.

#include <functional>
#include <string>
#include <vector>

#include "meanlab/report.hpp"

namespace meanlab::suite {

struct Criterion {
  int id;
  std::string key;
  std::string title;
  std::function<std::vector<report::CheckRecord>()> run;
};

/// Criteria 1-10 in order.
const std::vector<Criterion>& criteria();

/// Runs criteria 1-10; with `determinism_check` set, runs them a second time
/// and appends a record comparing the two JSON renderings.
report::ReportDocument run_suite(bool determinism_check = true);

/// JSON rendering with the timestamp blanked.
std::string json_without_timestamp(report::ReportDocument doc);

}  // namespace meanlab::suite
