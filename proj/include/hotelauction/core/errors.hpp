#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hotelauction {

// Raised when an input violates a domain precondition (bad date, invalid bid,
// unknown identifier, ...). `details` carries one line per offending item.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& message, std::vector<std::string> details = {})
      : std::runtime_error(message), details_(std::move(details)) {}

  const std::vector<std::string>& details() const { return details_; }

 private:
  std::vector<std::string> details_;
};

}  // namespace hotelauction
