// Runs the forward solvers over auction instance files, or over the seeded
// random suite when no files are given, and prints one delimiter-separated row
// per (instance, solver).
//
//   forward_benchmark [FILE...] [--seeds N] [--time-limit SECONDS]
//                     [--objective income|profit] [--shared-groups]
//                     [--solvers exact,greedy,fcfs] [--delimiter C]
//                     [--write-instances DIR]

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "hotelauction/forward/benchmark.hpp"
#include "hotelauction/forward/model.hpp"
#include "hotelauction/forward/solution_validator.hpp"
#include "hotelauction/forward/solvers.hpp"
#include "hotelauction/store/codec.hpp"

using namespace hotelauction;
using namespace hotelauction::forward;

namespace {

struct NamedInstance {
  std::string name;
  Instance instance;
};

std::string contention(const Instance& instance) {
  std::string out;
  for (int c : bids_above_capacity(instance)) out += (out.empty() ? "" : " ") + std::to_string(c);
  return out;
}

SolveResult run_solver(const std::string& solver, const ForwardModel& model, const Instance& instance,
                       const SolveLimits& limits) {
  if (solver == "exact") return solve_exact(model, limits);
  if (solver == "greedy") return solve_greedy(model);
  if (solver == "fcfs") {
    std::vector<CustomerId> order;
    for (const auto& bid : instance.bids) order.push_back(bid.customer_id);
    return solve_fcfs(model, order);
  }
  return brute_force(model);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forward auction solver benchmark"};
  std::vector<std::string> files;
  int seeds = 5;
  double time_limit = 60;
  std::string objective = "income";
  bool shared = false;
  std::vector<std::string> solvers{"exact", "greedy", "fcfs"};
  char delimiter = '\t';
  std::string write_dir;
  app.add_option("files", files, "Auction instance files")->check(CLI::ExistingFile);
  app.add_option("--seeds", seeds, "Seeds per random family when no files are given")->check(CLI::PositiveNumber);
  app.add_option("--time-limit", time_limit, "Exact solver limit in seconds")->check(CLI::PositiveNumber);
  app.add_option("--objective", objective)->check(CLI::IsMember({"income", "profit"}));
  app.add_flag("--shared-groups", shared, "Pair room types into shared groups in the random suite");
  app.add_option("--solvers", solvers)->delimiter(',')->check(CLI::IsMember({"exact", "greedy", "fcfs", "brute"}));
  app.add_option("--delimiter", delimiter);
  app.add_option("--write-instances", write_dir, "Also save each random instance as an auction file here");
  CLI11_PARSE(app, argc, argv);

  std::vector<NamedInstance> instances;
  if (!files.empty()) {
    for (const auto& file : files) {
      try {
        const auto record = store::read_auction_file(file);
        instances.push_back({std::filesystem::path(file).filename().string(), {record.auction, record.bids}});
      } catch (const DomainError& e) {
        std::cerr << file << ": " << e.what() << '\n';
        return 1;
      }
    }
  } else {
    for (const auto& config : benchmark_suite()) {
      for (int seed = 1; seed <= seeds; ++seed) {
        RandomInstanceSpec spec = config.spec;
        spec.shared_groups = shared;
        std::ostringstream name;
        name << config.name << "#" << seed;
        instances.push_back({name.str(), random_instance(spec, static_cast<std::uint64_t>(seed))});
      }
    }
  }

  if (!write_dir.empty()) {
    std::filesystem::create_directories(write_dir);
    int index = 0;
    for (const auto& [name, instance] : instances) {
      const store::AuctionRecord record{AuctionId{++index}, instance.auction, instance.bids, std::nullopt};
      std::ofstream(std::filesystem::path(write_dir) / ("instance_" + std::to_string(index) + ".json"))
          << store::auction_to_json(record).dump(2) << '\n';
    }
  }

  const ObjectiveMode mode = parse_objective_mode(objective);
  SolveLimits limits;
  limits.time_budget = std::chrono::milliseconds(static_cast<std::int64_t>(time_limit * 1000));
  const char d = delimiter;
  std::cout << "instance" << d << "solver" << d << "status" << d << "objective" << d << "bound" << d << "nodes" << d
            << "wall_seconds" << d << "valid" << d << "bids_above_capacity\n";
  for (const auto& [name, instance] : instances) {
    const auto model = build_model(instance.auction, instance.bids, mode);
    const auto above = contention(instance);
    for (const auto& solver : solvers) {
      SolveResult result;
      try {
        result = run_solver(solver, model, instance, limits);
      } catch (const EnumerationCapExceeded&) {
        std::cout << name << d << solver << d << "cap_exceeded" << d << d << d << d << d << d << above << '\n';
        continue;
      }
      const bool valid = validate_solution(model, result.solution).empty();
      std::cout << name << d << solver << d << to_string(result.status) << d << result.solution.objective.to_string()
                << d << result.best_bound.to_string() << d << result.nodes_explored << d << std::fixed
                << std::setprecision(4) << result.wall_time.count() << d << (valid ? "yes" : "no") << d << above
                << std::endl;
    }
  }
}
