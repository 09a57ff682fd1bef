#pragma once

// Singularity audit of a rational plane curve: finds every pair of parameters
// with a common image point and classifies the resulting double points.

#include <array>
#include <string>
#include <vector>

#include "rcw/curve.hpp"

namespace rcw {

enum class NodeKind {
  RealNode,       // two real parameters (or ∞): two real branches cross
  SolitaryNode,   // a conjugate pair of imaginary parameters meeting at a real point
  ImaginaryNode,  // non-real image point
};

std::string_view to_string(NodeKind kind);

struct NodeRecord {
  std::array<Parameter, 2> params;
  ProjPoint image;  // normalized
  NodeKind kind = NodeKind::ImaginaryNode;
  bool transversal = true;
};

/// Three or more parameters over one image point.
struct MultiplePoint {
  std::vector<Parameter> params;
  ProjPoint image;
};

struct AuditReport {
  std::vector<NodeRecord> nodes;
  std::vector<double> cusp_params;  // real parameters only
  std::vector<MultiplePoint> multiple_points;
  bool proper = true;
  int cover_degree = 1;  // > 1 for improper parametrizations
  bool admissible = true;
  std::vector<std::string> reasons;   // why not admissible
  std::vector<std::string> warnings;  // e.g. improper parametrization

  int count(NodeKind kind) const;
};

AuditReport audit(const RationalPlaneCurve& c, const Tolerances& tol = {});

}  // namespace rcw
