#pragma once

// Property campaign over generated curves.

#include <cstdint>
#include <string>
#include <vector>

#include "rcw/verify.hpp"

namespace rcw {

struct BatchOptions {
  std::uint64_t seed = 1;
  int count = 200;
  int max_harmonics = 4;  // curve i uses 1 + i mod max_harmonics harmonics
  unsigned threads = 0;   // 0: hardware concurrency
};

struct BatchItem {
  int index = 0;
  std::uint64_t seed = 0;
  int harmonics = 0;
  bool generated = false;
  std::string generation_error;
  VerificationReport report;
  bool passed = false;  // every identity holds and |w| <= n/2
  std::vector<std::string> failures;
};

struct BatchSummary {
  int requested = 0;
  int generated = 0;   // admissible curves produced by the generator
  int exhausted = 0;   // seeds for which the generator gave up
  int passed = 0;
  double seconds = 0;  // wall clock, not part of the JSON unless requested
  std::vector<BatchItem> items;

  bool all_passed() const { return generated > 0 && passed == generated; }
};

/// Seed of the i-th curve of a campaign.
std::uint64_t item_seed(std::uint64_t campaign_seed, int index);

BatchItem run_item(std::uint64_t campaign_seed, int index, int max_harmonics);
BatchSummary run_batch(const BatchOptions& opts);

nlohmann::ordered_json to_json(const BatchSummary& s, bool include_reports = false, bool include_timings = false);

}  // namespace rcw
