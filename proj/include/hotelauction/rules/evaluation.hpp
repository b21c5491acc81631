#pragma once

#include <string>
#include <vector>

#include "hotelauction/core/money.hpp"
#include "hotelauction/rules/miner.hpp"

namespace hotelauction::rules {

struct EvaluationRow {
  OfferRecord record;  // ground truth in accepted_price
  Money estimate;
  Money baseline;  // distribution optimum over the whole training set
  std::size_t applicable_rules = 0;
  bool used_fallback = false;
  bool conflict = false;  // estimate is the midpoint of the conflicting bounds
};

struct EvaluationReport {
  Money mae;
  double mape = 0;
  Money baseline_mae;
  double baseline_mape = 0;
  std::vector<EvaluationRow> rows;
};

// Mines `train`, then estimates a price for every `test` record from its six
// characteristics. Each test record also stands for the responding hotel
// (its rating, distance and sites; every breakfast type offered), so rules
// are filtered against it first. `cost` feeds the distribution fallback.
EvaluationReport evaluate_estimator(const std::vector<OfferRecord>& train, const std::vector<OfferRecord>& test,
                                    const MinerConfig& config, Money cost = Money{});

// Tab-separated per-case table: the six characteristics, then
// "estimate(truth)", baseline, and the estimate source.
std::string format_evaluation(const EvaluationReport& report);

}  // namespace hotelauction::rules
