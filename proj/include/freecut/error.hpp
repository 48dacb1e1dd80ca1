#ifndef FREECUT_ERROR_HPP
#define FREECUT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace freecut {

// Raised for malformed input and violated preconditions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an enumeration or search would exceed its configured cap.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

}  // namespace freecut

#endif  // FREECUT_ERROR_HPP
