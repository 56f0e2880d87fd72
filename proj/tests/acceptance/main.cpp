#include <cstdio>
#include <cstdlib>
#include <string>

#include "criteria.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  for (const auto& r : criteria::run_all(seed)) {
    std::puts(criteria::format(r).c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
