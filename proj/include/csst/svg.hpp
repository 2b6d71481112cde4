#pragma once

#include "csst/csst.hpp"

#include <string>

namespace csst {

/// Deterministic SVG render of the J_n model: one line element per edge,
/// stroke width proportional to 2^{-n}, fixed viewBox.
std::string render_jn_svg(int level, const WordBudget& budget = {});

}  // namespace csst
