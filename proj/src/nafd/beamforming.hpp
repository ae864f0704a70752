#pragma once

#include <Eigen/Dense>

#include "nafd/scheme.hpp"

namespace nafd {

/// DL precoder from estimated channels (rows: antennas, cols: users).
/// MR normalizes each estimate; ZF normalizes each column of G (G^H G)^-1.
/// Zero columns stay zero.
Eigen::MatrixXcd build_precoder(const Eigen::MatrixXcd& ghat, Scheme scheme);

/// UL combiner from the quantizer-scaled estimates A * ghat. Column k is the
/// combiner of user k (unnormalized).
Eigen::MatrixXcd build_combiner(const Eigen::MatrixXcd& a_ghat, Scheme scheme);

}  // namespace nafd
