#include "egonet/mean_shift.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "egonet/error.hpp"

namespace egonet {

namespace {

// Distances within this relative margin of the bandwidth count as equal to it,
// so a gap that is exactly h survives rounding after a shift or rescale.
constexpr double kBoundarySlack = 1e-9;

void validate(std::span<const double> values, double bandwidth) {
    if (values.empty()) throw ValidationError("mean shift needs at least one value");
    if (!std::isfinite(bandwidth) || !(bandwidth > 0.0))
        throw ValidationError(fmt::format("mean shift bandwidth must be positive and finite, got {}", bandwidth));
    for (double v : values) {
        if (!std::isfinite(v)) throw ValidationError("mean shift input contains a non-finite value");
    }
}

/// Sorted values plus prefix sums so each window mean costs two binary searches.
class WindowMeans {
public:
    explicit WindowMeans(std::span<const double> values) : sorted_(values.begin(), values.end()) {
        std::sort(sorted_.begin(), sorted_.end());
        prefix_.resize(sorted_.size() + 1, 0.0);
        for (std::size_t i = 0; i < sorted_.size(); ++i) prefix_[i + 1] = prefix_[i] + sorted_[i];
    }

    double mean_within(double x, double h) const {
        const auto lo = std::lower_bound(sorted_.begin(), sorted_.end(), x - h) - sorted_.begin();
        const auto hi = std::upper_bound(sorted_.begin(), sorted_.end(), x + h) - sorted_.begin();
        return (prefix_[static_cast<std::size_t>(hi)] - prefix_[static_cast<std::size_t>(lo)]) /
               static_cast<double>(hi - lo);
    }

private:
    std::vector<double> sorted_;
    std::vector<double> prefix_;
};

}  // namespace

std::vector<double> mean_shift_modes(std::span<const double> values, double bandwidth,
                                     const MeanShiftOptions& options) {
    validate(values, bandwidth);
    const WindowMeans windows(values);
    const double radius = bandwidth * (1.0 + kBoundarySlack);
    std::vector<double> modes(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        double x = values[i];
        for (int it = 0; it < options.max_iterations; ++it) {
            const double next = windows.mean_within(x, radius);
            const double step = std::abs(next - x);
            x = next;
            if (step < options.tolerance) break;
        }
        modes[i] = x;
    }
    return modes;
}

std::vector<MeanShiftCluster> mean_shift_1d(std::span<const double> values, double bandwidth,
                                            const MeanShiftOptions& options) {
    const auto modes = mean_shift_modes(values, bandwidth, options);

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return modes[a] < modes[b]; });

    const double merge_radius = options.merge_fraction * bandwidth * (1.0 + kBoundarySlack);
    std::vector<MeanShiftCluster> clusters;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::size_t i = order[k];
        if (k == 0 || modes[i] - modes[order[k - 1]] > merge_radius) clusters.emplace_back();
        clusters.back().members.push_back(i);
    }
    for (auto& c : clusters) {
        double sum = 0.0;
        for (std::size_t i : c.members) sum += modes[i];
        c.center = sum / static_cast<double>(c.members.size());
        std::sort(c.members.begin(), c.members.end());
    }
    std::reverse(clusters.begin(), clusters.end());
    return clusters;
}

double pairwise_gap_quantile(std::span<const double> values, double q) {
    if (values.size() < 2) throw ValidationError("pairwise gaps need at least two values");
    if (!(q >= 0.0 && q <= 1.0)) throw ValidationError(fmt::format("quantile {} outside [0, 1]", q));
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> gaps;
    gaps.reserve(sorted.size() * (sorted.size() - 1) / 2);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) gaps.push_back(sorted[j] - sorted[i]);
    }
    const double pos = q * static_cast<double>(gaps.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    std::nth_element(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(lo), gaps.end());
    const double a = gaps[lo];
    if (frac == 0.0 || lo + 1 >= gaps.size()) return a;
    const double b = *std::min_element(gaps.begin() + static_cast<std::ptrdiff_t>(lo) + 1, gaps.end());
    return a + frac * (b - a);
}

}  // namespace egonet
