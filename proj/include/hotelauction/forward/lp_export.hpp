#pragma once

#include <string>

#include "hotelauction/forward/model.hpp"

namespace hotelauction::forward {

// Writes the winner-determination program in CPLEX LP text format.
//
// Variables (ids are the external customer / room type / group ids):
//   y_<c>      binary, bid accepted
//   x_<c>_<d>  binary, bid c occupies night d (d ranges over its window)
//   l_<c>      integer arrival index
//   n_<r>_<d>  integer rooms of type r sold on night d
// Rows:
//   cap_<r>_<d>    sum_c n_{c,r} x_<c>_<d> - n_<r>_<d> <= 0
//   grp_<q>_<d>    sum_{r in q} n_<r>_<d> <= N_q
//   stay_<c>       sum_d x_<c>_<d> - M_c y_<c> = 0
//   first_<c>_<d>  l_<c> + |D| x_<c>_<d> <= d + |D|
//   last_<c>_<d>   d x_<c>_<d> - l_<c> <= M_c - 1
//   blk_<c>_<d>    x_<c>_<d> = 0 for blackout nights
// Bounds: L_c <= l_<c> <= U_c + 1 - M_c, 0 <= n_<r>_<d> <= n_r.
// Objective coefficients are written in currency units (not cents).
std::string export_lp(const ForwardModel& model);

}  // namespace hotelauction::forward
