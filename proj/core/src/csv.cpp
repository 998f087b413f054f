#include "mcf/csv.hpp"

#include <cmath>
#include <fstream>

namespace mcf {

void write_curvature_csv(std::ostream& os, const CurvatureField& cf) {
  os << "node_index,param,axis_coord,radius,kappa1,kappan,H,normAring,ratio\n";
  os.precision(17);
  for (std::size_t i = 0; i < cf.nodes.size(); ++i) {
    const CurvatureNode& nd = cf.nodes[i];
    os << i << ',' << nd.param << ',' << nd.z << ',' << nd.r << ','
       << nd.kappa_min << ',' << nd.kappa_max << ',' << nd.H << ','
       << std::sqrt(nd.normAring2) << ',';
    if (std::isfinite(nd.ratio))
      os << nd.ratio;
    else
      os << "nan";
    os << '\n';
  }
}

void write_curvature_csv(const std::string& path, const CurvatureField& cf) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open output file: " + path);
  write_curvature_csv(os, cf);
}

}  // namespace mcf
