#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace egonet {

struct MeanShiftCluster {
    double center = 0.0;
    std::vector<std::size_t> members;  // indices into the input, ascending
};

struct MeanShiftOptions {
    double tolerance = 1e-6;
    int max_iterations = 500;
    /// Converged positions closer than merge_fraction * bandwidth join one cluster.
    double merge_fraction = 0.5;
};

/// Flat-kernel mean shift on the real line. Every point climbs to the mean of
/// the values within +-bandwidth until it stops moving; converged positions are
/// then chained into clusters. Clusters come back sorted by descending center.
///
/// In one dimension the window mean is non-decreasing in the window position,
/// so each trajectory is monotone and cannot jump across a density valley.
/// The result depends only on the multiset of values, not on input order.
std::vector<MeanShiftCluster> mean_shift_1d(std::span<const double> values, double bandwidth,
                                            const MeanShiftOptions& options = {});

/// The point each value converges to, in input order.
std::vector<double> mean_shift_modes(std::span<const double> values, double bandwidth,
                                     const MeanShiftOptions& options = {});

/// Linear-interpolated quantile (q in [0,1]) of |v_i - v_j| over all pairs i < j.
double pairwise_gap_quantile(std::span<const double> values, double q);

}  // namespace egonet
