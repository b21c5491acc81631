#include "hotelauction/cli/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <ostream>

#include "hotelauction/core/errors.hpp"
#include "hotelauction/forward/lp_export.hpp"
#include "hotelauction/forward/model.hpp"
#include "hotelauction/forward/solvers.hpp"
#include "hotelauction/reverse/pricing.hpp"
#include "hotelauction/rules/evaluation.hpp"
#include "hotelauction/rules/miner.hpp"
#include "hotelauction/rules/synthetic.hpp"
#include "hotelauction/service/service.hpp"
#include "hotelauction/store/codec.hpp"
#include "hotelauction/store/store.hpp"

namespace hotelauction::cli {
namespace {

using nlohmann::ordered_json;

Money parse_amount(const std::string& text, const std::string& option) {
  const auto money = Money::parse(text);
  if (!money) throw DomainError(option + " is not an amount: " + text);
  return *money;
}

// Writes to `path`, or to `out` when no path is given.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file || !(file << text)) throw DomainError("cannot write " + path);
}

struct ForwardOptions {
  std::string instance;
  std::string solver = "exact";
  std::string objective = "income";
  double time_limit = 30;
  double gap = 0;
};

int optimize_forward(const ForwardOptions& o, std::ostream& out) {
  const auto record = store::read_auction_file(o.instance);
  const auto model = forward::build_model(record.auction, record.bids, parse_objective_mode(o.objective));
  forward::SolveResult result;
  if (o.solver == "exact") {
    forward::SolveLimits limits;
    limits.time_budget = std::chrono::milliseconds(static_cast<std::int64_t>(o.time_limit * 1000));
    limits.gap_tolerance = o.gap;
    result = forward::solve_exact(model, limits);
  } else if (o.solver == "greedy") {
    result = forward::solve_greedy(model);
  } else if (o.solver == "fcfs") {
    std::vector<CustomerId> order;
    for (const auto& bid : record.bids) order.push_back(bid.customer_id);
    result = forward::solve_fcfs(model, order);
  } else {
    result = forward::brute_force(model);
  }
  ordered_json doc{{"solver", o.solver},
                   {"objective_mode", o.objective},
                   {"status", forward::to_string(result.status)},
                   {"objective", store::money_to_json(result.solution.objective)},
                   {"best_bound", store::money_to_json(result.best_bound)},
                   {"nodes", result.nodes_explored},
                   {"wall_seconds", result.wall_time.count()},
                   {"accepted", service::accepted_entries(result.solution, record.auction.horizon)}};
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int reverse_price(const std::string& history, const std::string& cost_text, bool curve, std::ostream& out) {
  const Money cost = parse_amount(cost_text, "--cost");
  const auto prices = rules::read_price_column_file(history);
  const auto distribution = reverse::empirical_distribution(prices);
  const auto decision = reverse::optimize_price(distribution, cost);
  out << "optimal_price\t" << decision.price.to_string() << '\n'
      << "expected_profit\t" << decision.expected_profit.to_string() << '\n'
      << "acceptance_probability\t" << decision.acceptance_probability.to_string() << '\n'
      << "abstain\t" << (decision.abstain ? "true" : "false") << '\n';
  if (curve) {
    out << "\nprice\texpected_profit\tacceptance_probability\n";
    for (const auto& p : reverse::profit_curve(distribution, cost))
      out << p.price.to_string() << '\t' << p.expected_profit.to_string() << '\t' << p.acceptance_probability.to_string()
          << '\n';
  }
  return kExitOk;
}

void add_miner_options(CLI::App& app, rules::MinerConfig& config) {
  app.add_option("--support", config.support, "Minimum support (fraction of records)")->check(CLI::Range(0.0, 1.0));
  app.add_option("--confidence", config.confidence, "Minimum confidence")->check(CLI::Range(0.0, 1.0));
  app.add_option("--max-antecedents", config.max_antecedents, "Most conditions per rule")->check(CLI::PositiveNumber);
  app.add_option("--bins", config.bins, "Equal-frequency bins per numeric attribute")->check(CLI::Range(1, 15));
}

void error_document(std::ostream& err, const std::string& code, const std::string& message,
                    const std::vector<std::string>& details = {}) {
  ordered_json doc{{"error", code}, {"message", message}};
  if (!details.empty()) doc["details"] = details;
  err << doc.dump() << '\n';
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hotel room auctions: forward clearing, reverse pricing, rule mining", "hotelauction"};
  app.require_subcommand(1);

  ForwardOptions forward_options;
  auto* opt = app.add_subcommand("optimize-forward", "Clear a forward auction instance");
  opt->add_option("instance", forward_options.instance, "Auction JSON document")->required()->check(CLI::ExistingFile);
  opt->add_option("--solver", forward_options.solver)->check(CLI::IsMember({"exact", "greedy", "fcfs", "brute"}));
  opt->add_option("--objective", forward_options.objective)->check(CLI::IsMember({"income", "profit"}));
  opt->add_option("--time-limit", forward_options.time_limit, "Seconds (exact solver)")->check(CLI::PositiveNumber);
  opt->add_option("--gap", forward_options.gap, "Relative gap tolerance (exact solver)")->check(CLI::Range(0.0, 1.0));

  std::string lp_instance, lp_objective = "income", lp_output;
  auto* lp = app.add_subcommand("export-lp", "Write the winner determination program in LP format");
  lp->add_option("instance", lp_instance)->required()->check(CLI::ExistingFile);
  lp->add_option("--objective", lp_objective)->check(CLI::IsMember({"income", "profit"}));
  lp->add_option("-o,--output", lp_output);

  std::string history, cost_text;
  bool curve = false;
  auto* price = app.add_subcommand("reverse-price", "Profit-maximizing reverse auction offer from accepted prices");
  price->add_option("history", history, "Table with accepted prices")->required()->check(CLI::ExistingFile);
  price->add_option("--cost", cost_text, "Hotelier cost per night")->required();
  price->add_flag("--curve", curve, "Also print the profit curve");

  std::string dataset, rules_output;
  rules::MinerConfig mine_config;
  auto* mine = app.add_subcommand("mine-rules", "Mine price rules from accepted offers");
  mine->add_option("dataset", dataset)->required()->check(CLI::ExistingFile);
  add_miner_options(*mine, mine_config);
  mine->add_option("-o,--output", rules_output);

  int synthetic_n = 100;
  std::uint64_t synthetic_seed = 1;
  std::string synthetic_output;
  auto* gen = app.add_subcommand("gen-synthetic", "Generate a synthetic accepted-offer dataset");
  gen->add_option("--n", synthetic_n)->check(CLI::PositiveNumber);
  gen->add_option("--seed", synthetic_seed);
  gen->add_option("-o,--output", synthetic_output);

  std::string train_path, test_path, eval_cost = "0";
  rules::MinerConfig eval_config;
  auto* eval = app.add_subcommand("evaluate", "Estimate test prices from rules mined on train");
  eval->add_option("train", train_path)->required()->check(CLI::ExistingFile);
  eval->add_option("test", test_path)->required()->check(CLI::ExistingFile);
  add_miner_options(*eval, eval_config);
  eval->add_option("--cost", eval_cost, "Cost used by the distribution fallback");

  std::string store_path, host = "127.0.0.1";
  int port = 8080;
  double serve_time_limit = 30;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--store", store_path, "Store document (created on first write)")->required();
  serve->add_option("--port", port)->check(CLI::Range(1, 65535));
  serve->add_option("--host", host);
  serve->add_option("--time-limit", serve_time_limit, "Seconds per forward clearing")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    error_document(err, "usage_error", e.what());
    return kExitUsage;
  }

  try {
    if (opt->parsed()) return optimize_forward(forward_options, out);
    if (lp->parsed()) {
      const auto record = store::read_auction_file(lp_instance);
      emit(forward::export_lp(forward::build_model(record.auction, record.bids, parse_objective_mode(lp_objective))),
           lp_output, out);
      return kExitOk;
    }
    if (price->parsed()) return reverse_price(history, cost_text, curve, out);
    if (mine->parsed()) {
      emit(rules::format_ruleset(rules::mine_rules(rules::read_dataset_file(dataset), mine_config)), rules_output, out);
      return kExitOk;
    }
    if (gen->parsed()) {
      std::ostringstream text;
      rules::write_dataset(text, rules::generate_synthetic(synthetic_n, synthetic_seed));
      emit(text.str(), synthetic_output, out);
      return kExitOk;
    }
    if (eval->parsed()) {
      const auto report = rules::evaluate_estimator(rules::read_dataset_file(train_path),
                                                    rules::read_dataset_file(test_path), eval_config,
                                                    parse_amount(eval_cost, "--cost"));
      out << rules::format_evaluation(report);
      return kExitOk;
    }
    if (serve->parsed()) {
      store::StoreHandle handle(store_path);
      service::ServiceOptions options;
      options.limits.time_budget = std::chrono::milliseconds(static_cast<std::int64_t>(serve_time_limit * 1000));
      service::Service svc(handle, options);
      out << "listening on " << host << ':' << port << std::endl;
      if (!service::serve(svc, host, port)) throw DomainError("cannot listen on " + host + ":" + std::to_string(port));
      return kExitOk;
    }
  } catch (const DomainError& e) {
    error_document(err, "domain_error", e.what(), e.details());
    return kExitDomainError;
  } catch (const forward::EnumerationCapExceeded& e) {
    error_document(err, "domain_error", e.what());
    return kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace hotelauction::cli
