#pragma once
#include "henselkit/poly.hpp"

namespace henselkit {

// Lower convex hull of the points (i, val(c_i)) of a univariate polynomial.
// Segment slopes are strictly increasing; negated slopes are the candidate
// valuations of the roots, each with multiplicity = the segment width.
struct newton_polygon_slopes {
  struct segment {
    rat slope;
    long mult;
  };
  std::vector<segment> segments;
  long lowest_index = 0;  // support start (t-power dividing f)
  long highest_index = 0; // degree of the visible support

  std::vector<std::pair<rat, long>> root_valuations() const {
    std::vector<std::pair<rat, long>> rv;
    for (const auto& s : segments) rv.push_back({rat(-s.slope), s.mult});
    return rv;
  }
};

// Throws zero_series for a polynomial with no visible coefficients and
// precision_too_low when a precision-masked coefficient could alter the hull
// (including any masked coefficient outside the resolved support range).
newton_polygon_slopes newton_polygon(const series_poly& f);

} // namespace henselkit
