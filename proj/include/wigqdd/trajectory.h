#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "wigqdd/errors.h"

namespace wigqdd {

/// States recorded at exactly the requested output times.
template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;

  std::size_t index_of(double t) const {
    for (std::size_t k = 0; k < times.size(); ++k) {
      if (std::abs(times[k] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return k;
    }
    std::ostringstream msg;
    msg << "time " << t << " is not an output time of the trajectory";
    throw TimeNotInTrajectory(msg.str());
  }

  const State& at(double t) const { return states[index_of(t)]; }
  const State& back() const { return states.back(); }
};

/// Validates a list of output times: finite, nonnegative, nondecreasing.
void require_output_times(const std::vector<double>& times);

}  // namespace wigqdd
