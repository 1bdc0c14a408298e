#pragma once

#include <string>

#include "graspbo/contact.hpp"
#include "graspbo/heuristics.hpp"
#include "graspbo/metrics.hpp"
#include "graspbo/pose.hpp"

namespace graspbo {

/// Reasons a trial produced y = 0 without metric evaluation. EvaluatorError
/// marks an exception escaping the evaluator inside the optimization loop.
enum class TrialReason { Ok, Unreachable, WorkbenchCollision, EvaluatorError };

inline TrialReason to_trial_reason(FeasibilityReason r) {
  switch (r) {
    case FeasibilityReason::Ok: return TrialReason::Ok;
    case FeasibilityReason::Unreachable: return TrialReason::Unreachable;
    case FeasibilityReason::WorkbenchCollision:
      return TrialReason::WorkbenchCollision;
  }
  return TrialReason::Ok;
}

inline std::string to_string(TrialReason r) {
  switch (r) {
    case TrialReason::Ok: return "ok";
    case TrialReason::Unreachable: return "unreachable";
    case TrialReason::WorkbenchCollision: return "workbench_collision";
    case TrialReason::EvaluatorError: return "evaluator_error";
  }
  return "ok";
}

/// Full per-trial trace.
struct EvalRecord {
  GraspPose pose;
  int q_c = 0;
  TrialReason reason = TrialReason::Ok;
  int n_j = 0;  // links colliding with the object at the open target pose
  int n_c = 0;  // fingertip contacts after closing
  ContactSet contacts;
  QualityVector quality;
  double ar = 0.0;
  double cr = 0.0;
  double cp = 0.0;
  double q_m = 0.0;  // combined normalized metric (0 without closure)
  double y = 0.0;    // arm-specific outcome, observation noise included
  bool eps_exact = true;
};

}  // namespace graspbo
