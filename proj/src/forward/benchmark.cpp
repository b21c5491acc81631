#include "hotelauction/forward/benchmark.hpp"

namespace hotelauction::forward {
namespace {

BenchmarkConfig config(BenchmarkScale scale, int customers, int days, std::vector<int> capacities, int max_rooms) {
  RandomInstanceSpec spec;
  spec.customers = customers;
  spec.days = days;
  spec.capacities = capacities;
  spec.max_nights = 7;
  spec.max_window_slack = 7;
  spec.max_lines = 2;
  spec.max_rooms = max_rooms;
  std::string caps;
  for (int c : capacities) caps += (caps.empty() ? "" : ",") + std::to_string(c);
  return {std::to_string(customers) + "x" + std::to_string(days) + "/" + caps, scale, spec};
}

}  // namespace

std::vector<BenchmarkConfig> benchmark_suite() {
  return {
      config(BenchmarkScale::Small, 10, 10, {7, 7}, 2),
      config(BenchmarkScale::Small, 10, 7, {5}, 2),
      config(BenchmarkScale::Small, 20, 14, {10, 5}, 2),
      config(BenchmarkScale::Small, 20, 30, {5, 5, 5}, 2),
      config(BenchmarkScale::Small, 20, 45, {5, 10}, 2),
      config(BenchmarkScale::Large, 50, 60, {30, 30, 10, 10}, 6),
      config(BenchmarkScale::Large, 80, 60, {30, 20, 20}, 6),
  };
}

}  // namespace hotelauction::forward
