#pragma once

#include <stdexcept>
#include <string>

namespace circlelab {

struct LabError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularMatrix : LabError {
  using LabError::LabError;
};

struct ChartMismatch : LabError {
  using LabError::LabError;
};

// Analytic continuation left the strip chart; prefix = number of generator
// steps that were applied successfully before the failure.
struct ExtensionLeavesChart : LabError {
  explicit ExtensionLeavesChart(std::size_t prefix_len)
      : LabError("complex extension leaves chart after prefix of length " +
                 std::to_string(prefix_len)),
        prefix(prefix_len) {}
  std::size_t prefix;
};

struct NotUnivalent : LabError {
  using LabError::LabError;
};

struct NoPositiveRadius : LabError {
  using LabError::LabError;
};

struct NearPole : LabError {
  using LabError::LabError;
};

struct BallTooLarge : LabError {
  using LabError::LabError;
};

struct OutOfBall : LabError {
  using LabError::LabError;
};

struct NoExpandingGenerator : LabError {
  NoExpandingGenerator(std::size_t step_, double point_)
      : LabError("no generator expands at step " + std::to_string(step_) +
                 ", point " + std::to_string(point_)),
        step(step_),
        point(point_) {}
  std::size_t step;
  double point;
};

struct NoMatchingDepths : LabError {
  using LabError::LabError;
};

struct EmptyCandidateSet : LabError {
  using LabError::LabError;
};

struct NoCommonFixedPoint : LabError {
  using LabError::LabError;
};

struct NotHyperbolic : LabError {
  using LabError::LabError;
};

struct UnsupportedGenus : LabError {
  using LabError::LabError;
};

struct NoConsistentLift : LabError {
  using LabError::LabError;
};

struct PingPongFails : LabError {
  using LabError::LabError;
};

struct InvalidDepth : LabError {
  using LabError::LabError;
};

struct InvalidSampleCount : LabError {
  using LabError::LabError;
};

struct InconclusiveClustering : LabError {
  using LabError::LabError;
};

struct ParseError : LabError {
  using LabError::LabError;
};

struct OracleFailed : LabError {
  using LabError::LabError;
};

struct UnknownExperiment : LabError {
  using LabError::LabError;
};

// Internal consistency check failed (a proof-backed numerical assertion).
struct CheckFailed : LabError {
  using LabError::LabError;
};

}  // namespace circlelab
