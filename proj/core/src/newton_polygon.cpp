#include "henselkit/newton_polygon.hpp"

namespace henselkit {

newton_polygon_slopes newton_polygon(const series_poly& f) {
  if (f.n_vars() != 1) throw dimension_mismatch("newton polygon needs a univariate poly");

  std::vector<std::pair<long, rat>> pts;    // resolved: (index, valuation)
  std::vector<std::pair<long, xrat>> masked; // zero-so-far: (index, precision bound)
  for (const auto& [idx, c] : f.terms()) {
    valuation v = val(c);
    if (v.finite)
      pts.push_back({static_cast<long>(idx[0]), v.value});
    else if (v.precision_limited)
      masked.push_back({static_cast<long>(idx[0]), v.known_from});
    // exact zeros contribute nothing
  }
  if (pts.empty()) {
    if (masked.empty()) throw zero_series("polygon of the zero polynomial");
    throw precision_too_low("all coefficients are precision-masked");
  }

  // pts is sorted by index (map order).  Lower hull, monotone chain.
  std::vector<std::pair<long, rat>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      // keep b only if it lies strictly below segment a-p
      rat cross = (b.second - a.second) * (p.first - a.first) -
                  (p.second - a.second) * (b.first - a.first);
      if (cross >= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }

  long left = hull.front().first, right = hull.back().first;
  // Support value of the hull at index i, with end segments extended outward;
  // a single-vertex hull extends flat.
  auto hull_value = [&](long i) -> rat {
    size_t k = 0;
    if (hull.size() == 1) return hull[0].second;
    while (k + 2 < hull.size() && hull[k + 1].first < i) ++k;
    const auto& a = hull[k];
    const auto& b = hull[k + 1];
    return a.second + (b.second - a.second) * rat(i - a.first) / rat(b.first - a.first);
  };
  for (const auto& [i, bound] : masked) {
    if (i < left || i > right)
      throw precision_too_low("masked coefficient outside the resolved support");
    if (bound < xrat(hull_value(i)))
      throw precision_too_low("masked coefficient could cut the hull at index " +
                              std::to_string(i));
  }

  newton_polygon_slopes out;
  out.lowest_index = left;
  out.highest_index = right;
  for (size_t k = 0; k + 1 < hull.size(); ++k) {
    rat slope = (hull[k + 1].second - hull[k].second) / rat(hull[k + 1].first - hull[k].first);
    out.segments.push_back({slope, hull[k + 1].first - hull[k].first});
  }
  return out;
}

} // namespace henselkit
