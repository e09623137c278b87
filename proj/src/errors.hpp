#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace screwxfer {

enum class ErrorCode {
  Domain,
  Parse,
  JointLimit,
  SingularityStall,
  NotConverged,
  CornerUndefined,
  DegenerateLine,
  NoVerticalIntersection,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(ErrorCode::Parse, what) {}
};

// Planner failures carry the offending waypoint and, once propagated through
// plan_through_guiding_poses, the guiding-pose segment.
class PlanError : public Error {
 public:
  PlanError(ErrorCode code, const std::string& what, std::size_t waypoint)
      : Error(code, what), waypoint_(waypoint) {}
  std::size_t waypoint() const noexcept { return waypoint_; }
  long segment() const noexcept { return segment_; }
  void set_segment(long s) noexcept { segment_ = s; }

 private:
  std::size_t waypoint_;
  long segment_ = -1;
};

class JointLimitViolation : public PlanError {
 public:
  JointLimitViolation(std::size_t joint, std::size_t waypoint, double value)
      : PlanError(ErrorCode::JointLimit,
                  "joint " + std::to_string(joint) + " out of limits (" + std::to_string(value) +
                      " rad) at waypoint " + std::to_string(waypoint),
                  waypoint),
        joint_(joint) {}
  std::size_t joint() const noexcept { return joint_; }

 private:
  std::size_t joint_;
};

struct SingularityStall : PlanError {
  SingularityStall(std::size_t waypoint, double err)
      : PlanError(ErrorCode::SingularityStall,
                  "tracking error stalled at " + std::to_string(err) + " near a singular configuration (waypoint " +
                      std::to_string(waypoint) + ")",
                  waypoint) {}
};

struct NotConverged : PlanError {
  NotConverged(std::size_t waypoint, double err)
      : PlanError(ErrorCode::NotConverged,
                  "tracking did not converge at waypoint " + std::to_string(waypoint) + " (residual " +
                      std::to_string(err) + ")",
                  waypoint) {}
};

struct CornerUndefined : Error {
  CornerUndefined() : Error(ErrorCode::CornerUndefined, "circular rim has no corners") {}
};

struct DegenerateLine : Error {
  DegenerateLine()
      : Error(ErrorCode::DegenerateLine, "primary and passive base projections coincide; joining line undefined") {}
};

struct NoVerticalIntersection : Error {
  NoVerticalIntersection()
      : Error(ErrorCode::NoVerticalIntersection,
              "lowest rim point never projects into the passive opening") {}
};

}  // namespace screwxfer
