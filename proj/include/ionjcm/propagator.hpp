// Exact time-evolution operator per excitation block.
//
// Within block n >= 2 (basis (+1,n-2), (0,n-1), (-1,n)) the propagator
// exp(-iHt) is the real orthogonal matrix
//
//   | ((n-1)c + n)/D        sqrt((n-1)/D) s     sqrt(n(n-1))/D (1-c) |
//   | -sqrt((n-1)/D) s      c                   sqrt(n/D) s          |
//   | sqrt(n(n-1))/D (1-c)  -sqrt(n/D) s        (n c + n-1)/D        |
//
// with D = 2n-1, c = cos(beta), s = sin(beta), beta = sqrt(2n-1) xi t.
// The sign of the sin(beta) entries is the one produced by H as written in
// model.hpp; the oracle tests pin it.

#ifndef IONJCM_PROPAGATOR_HPP
#define IONJCM_PROPAGATOR_HPP

#include <vector>

#include <Eigen/Dense>

#include "ionjcm/model.hpp"

namespace ionjcm {

struct SubspacePropagator {
  int n = 0;
  double t = 0.0;
  /// sqrt(2n-1) xi t; zero for n = 0.
  double beta = 0.0;
  /// 1x1, 2x2 or 3x3 in the order of subspace_members(n).
  Eigen::MatrixXd matrix;
};

/// Throws std::invalid_argument for n < 0 or t < 0.
SubspacePropagator subspace_propagator(int n, double t, const PhysicalParams& params);

struct TruncationReport {
  /// Blocks only partly inside the cutoff; they are not propagated.
  std::vector<int> excluded_subspaces;
  int excluded_labels = 0;
};

class BlockPropagator {
 public:
  BlockPropagator(std::vector<SubspacePropagator> blocks, TruncationReport report);

  const std::vector<SubspacePropagator>& blocks() const { return blocks_; }
  const TruncationReport& truncation() const { return report_; }

  /// Total dimension of the retained blocks.
  int dimension() const;
  /// Basis labels in block order.
  std::vector<BasisLabel> labels() const;
  /// Dense block-diagonal matrix in the order of labels().
  Eigen::MatrixXd dense() const;

 private:
  std::vector<SubspacePropagator> blocks_;
  TruncationReport report_;
};

/// Blocks n = 0..cutoff. Blocks cutoff+1 and cutoff+2 have members beyond
/// the cutoff and are listed in the truncation report.
BlockPropagator block_propagator(double t, const PhysicalParams& params);

}  // namespace ionjcm

#endif  // IONJCM_PROPAGATOR_HPP
