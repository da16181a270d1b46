#include "warpflow/records.hpp"

namespace warpflow {

const char* StepRecord::csv_header() {
  return "t,dt,area,volume,w2,osc_u,osc_theta,min_u,max_u,kappa_min,kappa_max,"
         "speed_max,umbilicity,mink1_residual,mink2_residual";
}

std::array<double, StepRecord::column_count> StepRecord::columns() const {
  return {t,     dt,    area,      volume,    w2,         osc_u,
          osc_theta, min_u, max_u,     kappa_min, kappa_max,  speed_max,
          umbilicity, mink1_residual, mink2_residual};
}

StepRecord StepRecord::from_columns(const std::array<double, column_count>& c) {
  StepRecord r;
  r.t = c[0];
  r.dt = c[1];
  r.area = c[2];
  r.volume = c[3];
  r.w2 = c[4];
  r.osc_u = c[5];
  r.osc_theta = c[6];
  r.min_u = c[7];
  r.max_u = c[8];
  r.kappa_min = c[9];
  r.kappa_max = c[10];
  r.speed_max = c[11];
  r.umbilicity = c[12];
  r.mink1_residual = c[13];
  r.mink2_residual = c[14];
  return r;
}

} // namespace warpflow
