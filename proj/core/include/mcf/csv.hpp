#pragma once

#include <ostream>
#include <string>

#include "mcf/curvature.hpp"

namespace mcf {

/// CurvatureField CSV, columns:
/// node_index,param,axis_coord,radius,kappa1,kappan,H,normAring,ratio
void write_curvature_csv(std::ostream& os, const CurvatureField& cf);
void write_curvature_csv(const std::string& path, const CurvatureField& cf);

}  // namespace mcf
