#pragma once

#include <optional>
#include <string>

namespace maxiset {

/// Outcome of a single test application.
///
/// `standardized` is (statistic − centering) / scale and the test rejects when
/// it exceeds `threshold`.
struct TestReport {
  std::string family;
  double statistic = 0.0;
  double centering = 0.0;
  double scale = 1.0;
  double standardized = 0.0;
  double threshold = 0.0;
  bool reject = false;
  double alpha = 0.05;
  std::optional<double> predicted_type2;
};

}  // namespace maxiset
