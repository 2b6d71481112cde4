#include "csst/svg.hpp"

#include <sstream>

namespace csst {

std::string render_jn_svg(int level, const WordBudget& budget) {
  JnModel m = build_jn(level, budget);
  std::ostringstream out;
  // plane y-axis points up; SVG's points down, so y is negated
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" "
         "viewBox=\"-1.1 -1.15 2.2 1.25\">\n";
  Rational width = pow2(-level) / 8;
  std::string w = dyadic_decimal(width);
  for (int e = 0; e < m.tree.edge_count(); ++e) {
    const auto& ed = m.tree.edge(e);
    const auto& pu = *m.tree.position(ed.u);
    const auto& pv = *m.tree.position(ed.v);
    out << "  <line x1=\"" << dyadic_decimal(pu.first) << "\" y1=\""
        << dyadic_decimal(-pu.second) << "\" x2=\"" << dyadic_decimal(pv.first) << "\" y2=\""
        << dyadic_decimal(-pv.second) << "\" stroke=\"black\" stroke-width=\"" << w
        << "\" stroke-linecap=\"round\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace csst
