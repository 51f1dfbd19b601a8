#include <skewcanon/acceptance.hpp>

#include <iostream>

int main() {
  const auto results = skewcanon::run_acceptance(std::cout);
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}
