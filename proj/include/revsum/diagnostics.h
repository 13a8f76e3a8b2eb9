#pragma once

#include <string>
#include <vector>

namespace revsum {

// Collects non-fatal warnings raised while processing data. Passing a null
// Diagnostics pointer to an operation sends warnings to stderr instead.
class Diagnostics {
 public:
  void warn(std::string message) { warnings_.push_back(std::move(message)); }
  const std::vector<std::string>& warnings() const { return warnings_; }
  bool empty() const { return warnings_.empty(); }

 private:
  std::vector<std::string> warnings_;
};

void warn(Diagnostics* diag, std::string message);

}  // namespace revsum
