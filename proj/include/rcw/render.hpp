#pragma once

#include <string>

#include "rcw/curve.hpp"
#include "rcw/verify.hpp"

namespace rcw {

struct RenderOptions {
  int base_samples = 256;
  int arrows = 4;        // orientation arrowheads, equally spaced in u
  double width = 640.0;  // pixels; height follows the aspect ratio
};

/// Standalone SVG of the real locus: one closed path, arrowheads along
/// increasing t, tangency events of the report labelled by class, real node
/// markers. Output depends only on the inputs.
std::string render_svg(const RationalPlaneCurve& c, const VerificationReport& report,
                       const RenderOptions& opts = {});

/// Writes render_svg to path; throws ErrorKind::Io on failure.
void render_svg(const RationalPlaneCurve& c, const VerificationReport& report, const std::string& path,
                const RenderOptions& opts = {});

}  // namespace rcw
