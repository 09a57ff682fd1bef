#include "rcw/batch.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "rcw/generate.hpp"

namespace rcw {

std::uint64_t item_seed(std::uint64_t campaign_seed, int index) {
  // splitmix64 of the pair
  std::uint64_t z = campaign_seed * 0x9e3779b97f4a7c15ull + std::uint64_t(index) + 1;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

BatchItem run_item(std::uint64_t campaign_seed, int index, int max_harmonics) {
  BatchItem item;
  item.index = index;
  item.seed = item_seed(campaign_seed, index);
  item.harmonics = 1 + index % max_harmonics;
  try {
    const GeneratedCurve g = generate_curve(item.seed, item.harmonics);
    item.generated = true;
    const std::string name = "generated seed=" + std::to_string(item.seed) + " K=" + std::to_string(item.harmonics);
    item.report = verify_all(g.curve, {item.seed, {}}, name);
  } catch (const Error& e) {
    item.generation_error = e.what();
    return item;
  }

  const VerificationReport& r = item.report;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) item.failures.push_back(what);
  };
  for (const auto& e : r.errors) item.failures.push_back(e);
  for (const auto& v : r.violations) item.failures.push_back(v);
  need(r.hypotheses_ok, "hypotheses not met");
  need(r.methods_agree, "rotation-number methods disagree");
  need(r.main_theorem == TheoremVerdict::Verified, "pole balance differs from rotation number");
  if (r.census) need(r.census->w_plus == r.census->w_minus, "census formulas disagree");
  if (r.gauss) need(2 * std::abs(r.gauss->w) <= r.degree, "|w| exceeds n/2");
  item.passed = item.failures.empty();
  return item;
}

BatchSummary run_batch(const BatchOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  BatchSummary s;
  s.requested = opts.count;
  s.items.resize(std::max(opts.count, 0));
  unsigned threads = opts.threads != 0 ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max(1, opts.count));

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < opts.count; i = next++) s.items[i] = run_item(opts.seed, i, opts.max_harmonics);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& item : s.items) {
    if (!item.generated) {
      ++s.exhausted;
      continue;
    }
    ++s.generated;
    if (item.passed) ++s.passed;
  }
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

nlohmann::ordered_json to_json(const BatchSummary& s, bool include_reports, bool include_timings) {
  nlohmann::ordered_json j;
  j["requested"] = s.requested;
  j["generated"] = s.generated;
  j["exhausted"] = s.exhausted;
  j["passed"] = s.passed;
  j["all_passed"] = s.all_passed();
  j["items"] = nlohmann::ordered_json::array();
  for (const auto& item : s.items) {
    nlohmann::ordered_json ij;
    ij["index"] = item.index;
    ij["seed"] = item.seed;
    ij["harmonics"] = item.harmonics;
    ij["generated"] = item.generated;
    if (!item.generated) {
      ij["generation_error"] = item.generation_error;
    } else {
      ij["degree"] = item.report.degree;
      ij["w"] = item.report.gauss ? nlohmann::ordered_json(item.report.gauss->w) : nlohmann::ordered_json(nullptr);
      ij["passed"] = item.passed;
      ij["failures"] = item.failures;
      if (include_reports) ij["report"] = to_json(item.report, include_timings);
    }
    j["items"].push_back(ij);
  }
  if (include_timings) j["seconds"] = s.seconds;
  return j;
}

}  // namespace rcw
