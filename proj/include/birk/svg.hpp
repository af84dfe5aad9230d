#pragma once

#include <string>

#include "birk/constants.hpp"

namespace birk {

// unit sphere of the norm as an SVG curve; when a witness estimate is given,
// the pair x, y is drawn along with the chords realizing ||x+y|| and ||x-y||.
// Output is byte-stable for identical inputs.
std::string sphere_svg(const Norm& norm, const ConstantEstimate* witness = nullptr,
                       int samples = 1024);

}  // namespace birk
