// Structural property suites with fixed seeds; exits nonzero on any failure.
#include "properties.hpp"

#include <iostream>

int main() {
  std::size_t failures = 0;
  for (const auto& t : props::all_properties()) {
    std::cout << t.name << ": " << t.cases << " checks, " << t.failures << " failures";
    if (t.failures) std::cout << " (first: " << t.first_failure << ")";
    std::cout << "\n";
    failures += t.failures;
  }
  return failures == 0 ? 0 : 1;
}
