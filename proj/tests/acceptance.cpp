#include <iostream>

#include "connexive/battery.hpp"

int main() {
  bool all = true;
  for (const auto& r : connexive::run_battery()) {
    std::cout << connexive::format_line(r) << std::endl;
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
