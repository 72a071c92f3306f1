#pragma once

#include <optional>
#include <string>

#include "elac/chain.hpp"

namespace elac {

struct SvgStyle {
    std::optional<double> chord_tol;  // default: 1e-3 of the bounding-box diagonal
    double stroke_width = 0.0;        // 0: 2e-3 of the diagonal
    bool control_points = false;      // endpoints of every segment
    bool tangent_arrows = false;      // first tangent of the chain and every end tangent
    bool joint_markers = false;       // green for passing joints, red otherwise
};

// World y goes up; the document flips it.
std::string export_svg(const Chain& chain, const SvgStyle& style = {});

}  // namespace elac
