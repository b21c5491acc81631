#include "hotelauction/forward/lp_export.hpp"

#include <sstream>
#include <vector>

namespace hotelauction::forward {
namespace {

std::string y_var(const CompiledBid& bid) { return "y_" + std::to_string(bid.customer.value); }
std::string l_var(const CompiledBid& bid) { return "l_" + std::to_string(bid.customer.value); }
std::string x_var(const CompiledBid& bid, int day) {
  return "x_" + std::to_string(bid.customer.value) + "_" + std::to_string(day);
}
std::string n_var(const RoomType& type, int day) {
  return "n_" + std::to_string(type.id.value) + "_" + std::to_string(day);
}

// Long rows are wrapped; LP readers accept continuation lines.
class RowWriter {
 public:
  explicit RowWriter(std::ostringstream& out) : out_(out) {}

  void term(std::int64_t coefficient, const std::string& var) {
    term_text(coefficient < 0 ? "-" : "+", std::to_string(coefficient < 0 ? -coefficient : coefficient), var);
  }
  void term(Money coefficient, const std::string& var) {
    const bool negative = coefficient < Money{};
    term_text(negative ? "-" : "+", (negative ? -coefficient : coefficient).to_string(), var);
  }
  bool empty() const { return count_ == 0; }

 private:
  void term_text(const char* sign, const std::string& magnitude, const std::string& var) {
    if (count_ > 0 && count_ % 8 == 0) out_ << "\n   ";
    if (count_ == 0 && sign[0] == '+') {
      out_ << ' ';
    } else {
      out_ << ' ' << sign << ' ';
    }
    if (magnitude != "1") out_ << magnitude << ' ';
    out_ << var;
    ++count_;
  }

  std::ostringstream& out_;
  int count_ = 0;
};

}  // namespace

std::string export_lp(const ForwardModel& model) {
  std::ostringstream out;
  const int days = model.days();
  const auto bids = model.bids();
  const auto types = model.room_types();

  out << "\\ forward auction winner determination (" << to_string(model.objective_mode()) << ")\n";
  out << "\\ horizon " << format_iso_date(model.horizon().start()) << " + " << days << " nights, "
      << bids.size() << " bids\n";
  out << "Maximize\n obj:";
  {
    RowWriter row(out);
    for (const auto& bid : bids) {
      if (bid.coefficient != Money{}) row.term(bid.coefficient, y_var(bid));
    }
    if (row.empty()) out << " 0";
  }
  out << "\nSubject To\n";

  for (std::size_t t = 0; t < types.size(); ++t) {
    for (int d = 1; d <= days; ++d) {
      out << " cap_" << types[t].id.value << '_' << d << ':';
      RowWriter row(out);
      for (const auto& bid : bids) {
        if (d < bid.window_lo || d > bid.window_hi) continue;
        for (const auto& line : bid.lines) {
          if (line.type == static_cast<int>(t)) row.term(static_cast<std::int64_t>(line.rooms), x_var(bid, d));
        }
      }
      row.term(std::int64_t{-1}, n_var(types[t], d));
      out << " <= 0\n";
    }
  }
  for (std::size_t g = 0; g < model.groups().size(); ++g) {
    std::vector<std::size_t> members;
    for (std::size_t t = 0; t < types.size(); ++t) {
      if (model.group_of_type(static_cast<int>(t)) == static_cast<int>(g)) members.push_back(t);
    }
    if (members.empty()) continue;
    for (int d = 1; d <= days; ++d) {
      out << " grp_" << model.groups()[g].id.value << '_' << d << ':';
      RowWriter row(out);
      for (std::size_t t : members) row.term(std::int64_t{1}, n_var(types[t], d));
      out << " <= " << model.group_capacity(static_cast<int>(g)) << '\n';
    }
  }
  for (const auto& bid : bids) {
    const std::string id = std::to_string(bid.customer.value);
    out << " stay_" << id << ':';
    {
      RowWriter row(out);
      for (int d = bid.window_lo; d <= bid.window_hi; ++d) row.term(std::int64_t{1}, x_var(bid, d));
      row.term(static_cast<std::int64_t>(-bid.nights), y_var(bid));
    }
    out << " = 0\n";
    for (int d = bid.window_lo; d <= bid.window_hi; ++d) {
      out << " first_" << id << '_' << d << ": " << l_var(bid) << " + " << days << ' ' << x_var(bid, d)
          << " <= " << d + days << '\n';
      out << " last_" << id << '_' << d << ": ";
      if (d != 1) out << d << ' ';
      out << x_var(bid, d) << " - " << l_var(bid) << " <= " << bid.nights - 1 << '\n';
    }
    for (int d : bid.blackout_days) out << " blk_" << id << '_' << d << ": " << x_var(bid, d) << " = 0\n";
  }

  out << "Bounds\n";
  for (const auto& bid : bids) {
    out << ' ' << bid.window_lo << " <= " << l_var(bid) << " <= " << bid.window_hi + 1 - bid.nights << '\n';
  }
  for (std::size_t t = 0; t < types.size(); ++t) {
    for (int d = 1; d <= days; ++d) {
      out << " 0 <= " << n_var(types[t], d) << " <= " << model.type_capacity(static_cast<int>(t)) << '\n';
    }
  }

  if (!bids.empty()) {
    out << "Binaries\n";
    for (const auto& bid : bids) {
      out << ' ' << y_var(bid);
      for (int d = bid.window_lo; d <= bid.window_hi; ++d) out << ' ' << x_var(bid, d);
      out << '\n';
    }
  }
  const bool any_general = !bids.empty() || !types.empty();
  if (any_general) {
    out << "Generals\n";
    for (const auto& bid : bids) out << ' ' << l_var(bid) << '\n';
    for (std::size_t t = 0; t < types.size(); ++t) {
      for (int d = 1; d <= days; ++d) out << ' ' << n_var(types[t], d) << '\n';
    }
  }
  out << "End\n";
  return out.str();
}

}  // namespace hotelauction::forward
