#pragma once

#include <stdexcept>
#include <string>

namespace pathcrystal {

// Thrown when an enumeration or search exceeds its configured budget.
class budget_error : public std::runtime_error {
public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when two independent computations of the same quantity disagree.
// Always indicates an implementation bug, never bad user input.
class cross_check_error : public std::logic_error {
public:
  explicit cross_check_error(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline void internal_check(bool cond, const std::string& msg) {
  if (!cond) throw cross_check_error(msg);
}

}  // namespace pathcrystal
