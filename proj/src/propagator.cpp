#include "ionjcm/propagator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ionjcm {

SubspacePropagator subspace_propagator(int n, double t, const PhysicalParams& params) {
  if (n < 0) throw std::invalid_argument("excitation index must be non-negative, got " + std::to_string(n));
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");

  SubspacePropagator out;
  out.n = n;
  out.t = t;
  if (n == 0) {
    out.matrix = Eigen::MatrixXd::Identity(1, 1);
    return out;
  }

  const double dn = n;
  const double d = 2.0 * dn - 1.0;
  out.beta = std::sqrt(d) * params.xi() * t;
  const double c = std::cos(out.beta);
  const double s = std::sin(out.beta);

  if (n == 1) {
    out.matrix.resize(2, 2);
    out.matrix << c, s,
                  -s, c;
    return out;
  }

  const double upper = std::sqrt((dn - 1.0) / d) * s;
  const double lower = std::sqrt(dn / d) * s;
  const double corner = std::sqrt(dn * (dn - 1.0)) / d * (1.0 - c);
  out.matrix.resize(3, 3);
  out.matrix << ((dn - 1.0) * c + dn) / d, upper, corner,
                -upper, c, lower,
                corner, -lower, (dn * c + dn - 1.0) / d;
  return out;
}

BlockPropagator::BlockPropagator(std::vector<SubspacePropagator> blocks, TruncationReport report)
    : blocks_(std::move(blocks)), report_(std::move(report)) {}

int BlockPropagator::dimension() const {
  int dim = 0;
  for (const auto& b : blocks_) dim += static_cast<int>(b.matrix.rows());
  return dim;
}

std::vector<BasisLabel> BlockPropagator::labels() const {
  std::vector<BasisLabel> out;
  for (const auto& b : blocks_) {
    for (const auto& label : subspace_members(b.n)) out.push_back(label);
  }
  return out;
}

Eigen::MatrixXd BlockPropagator::dense() const {
  const int dim = dimension();
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim, dim);
  int offset = 0;
  for (const auto& b : blocks_) {
    const auto size = b.matrix.rows();
    u.block(offset, offset, size, size) = b.matrix;
    offset += static_cast<int>(size);
  }
  return u;
}

BlockPropagator block_propagator(double t, const PhysicalParams& params) {
  const int cutoff = params.fock_cutoff();
  std::vector<SubspacePropagator> blocks;
  blocks.reserve(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) blocks.push_back(subspace_propagator(n, t, params));

  // (+1, cutoff-1), (0, cutoff) and (+1, cutoff) sit in blocks whose
  // (-1, n) member is beyond the cutoff.
  TruncationReport report;
  report.excluded_subspaces = {cutoff + 1, cutoff + 2};
  report.excluded_labels = 3;
  return BlockPropagator(std::move(blocks), std::move(report));
}

}  // namespace ionjcm
