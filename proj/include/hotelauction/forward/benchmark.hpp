#pragma once

#include <string>
#include <vector>

#include "hotelauction/forward/instance_gen.hpp"

namespace hotelauction::forward {

enum class BenchmarkScale { Small, Large };

struct BenchmarkConfig {
  std::string name;  // e.g. "20x30/5,5,5"
  BenchmarkScale scale;
  RandomInstanceSpec spec;
};

// Random instance families shaped like the published run-time tables:
// five small-to-medium hotels (10-20 customers, 7-45 nights) and two larger
// ones (50 and 80 customers over 60 nights).
std::vector<BenchmarkConfig> benchmark_suite();

}  // namespace hotelauction::forward
