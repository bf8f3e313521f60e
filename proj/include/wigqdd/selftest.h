#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wigqdd {

struct SelftestCheck {
  std::string name;
  double value;
  double tolerance;
  bool pass() const { return value <= tolerance; }
};

/// Fast invariant suite on small grids; `seed` drives the random fields.
std::vector<SelftestCheck> run_selftest(std::uint64_t seed);

}  // namespace wigqdd
