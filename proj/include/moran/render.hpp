#pragma once

#include "moran/geo_set.hpp"
#include "moran/moran_construction.hpp"

#include <string>
#include <utility>
#include <vector>

namespace moran {

struct RenderStyle {
  double width = 800;       // drawing width in px, seed mapped onto it
  double row_height = 12;   // 1D: height of one level row
  double row_gap = 4;
  bool gaps = false;        // 1D: shade the level-1 complement inside the seed
  int decimals = 3;         // coordinates are rounded only here
};

/// 1D: one row of pieces per level 0..depth and a final union strip.
/// 2D: the pieces of every level as nested rectangles.
std::string render_svg(const MoranConstruction& mc, std::size_t depth, const RenderStyle& style = {},
                       std::size_t budget = kDefaultNodeBudget);

/// Stacked labelled strips of subsets of [0, 1].
std::string render_strips(const std::vector<std::pair<std::string, GeoSet>>& rows, const RenderStyle& style = {});

}  // namespace moran
