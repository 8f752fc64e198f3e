#include "egonet/static_net.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <tuple>

#include "egonet/error.hpp"
#include "egonet/mean_shift.hpp"

namespace egonet {

double tie_frequency(std::size_t interactions, Instant first_contact, Instant window_end) {
    const Seconds elapsed = std::max(window_end - first_contact, kMinTieDuration);
    return static_cast<double>(interactions) / to_years(elapsed);
}

EgoNetwork build_ego_network(const UserId& ego_id, std::span<const Interaction> interactions, Window window) {
    if (!(window.end > window.start))
        throw ValidationError(fmt::format("ego {}: window end must follow its start", ego_id));

    EgoNetwork net{ego_id, window, {}};
    std::map<UserId, const Interaction*> first_ever;
    for (const auto& it : interactions) {
        auto& first = first_ever[it.alter_id];
        if (!first || std::tie(it.timestamp, it.tweet_id) < std::tie(first->timestamp, first->tweet_id)) first = &it;

        if (!window.contains(it.timestamp)) continue;
        auto [pos, inserted] = net.ties.try_emplace(it.alter_id);
        TieStats& s = pos->second;
        if (inserted) {
            s.first_contact = it.timestamp;
            s.last_contact = it.timestamp;
        }
        ++s.interaction_count;
        s.first_contact = std::min(s.first_contact, it.timestamp);
        s.last_contact = std::max(s.last_contact, it.timestamp);
        s.hashtag_total += static_cast<std::size_t>(it.hashtag_count);
    }
    for (auto& [alter, s] : net.ties) {
        s.frequency_per_year = tie_frequency(s.interaction_count, s.first_contact, window.end);
        s.activated_by_hashtag = first_ever.at(alter)->hashtag_count > 0;
    }
    return net;
}

EgoNetwork active_network(const EgoNetwork& net) {
    EgoNetwork out{net.ego_id, net.window, {}};
    for (const auto& [alter, s] : net.ties) {
        if (s.frequency_per_year >= kActiveTieThreshold) out.ties.emplace(alter, s);
    }
    return out;
}

namespace {

LayerStructure single_circle(const EgoNetwork& active) {
    LayerStructure ls;
    ls.ego_id = active.ego_id;
    ls.num_circles = 1;
    double sum = 0.0;
    for (const auto& [alter, s] : active.ties) {
        ls.ring_of.emplace(alter, 1);
        sum += s.frequency_per_year;
    }
    ls.ring_sizes = {active.ties.size()};
    ls.circle_sizes = {active.ties.size()};
    ls.ring_mean_frequency = {sum / static_cast<double>(active.ties.size())};
    return ls;
}

}  // namespace

LayerStructure detect_circles(const EgoNetwork& active, double bandwidth_quantile) {
    if (active.ties.empty()) throw ValidationError(fmt::format("ego {}: no active ties to cluster", active.ego_id));
    if (active.ties.size() < 2) {
        spdlog::debug("ego {}: single active tie, degenerate layer structure", active.ego_id);
        auto ls = single_circle(active);
        ls.degenerate = true;
        return ls;
    }

    std::vector<const UserId*> alters;
    std::vector<double> logf;
    for (const auto& [alter, s] : active.ties) {
        alters.push_back(&alter);
        logf.push_back(std::log(s.frequency_per_year));
    }

    double bandwidth = pairwise_gap_quantile(logf, bandwidth_quantile);
    if (!(bandwidth > 0.0)) {
        // Too many identical frequencies: fall back to half the smallest positive gap.
        std::vector<double> sorted = logf;
        std::sort(sorted.begin(), sorted.end());
        bandwidth = 0.0;
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            const double gap = sorted[i] - sorted[i - 1];
            if (gap > 0.0 && (bandwidth == 0.0 || gap < bandwidth)) bandwidth = gap;
        }
        if (bandwidth == 0.0) return single_circle(active);
        bandwidth /= 2.0;
    }

    const auto clusters = mean_shift_1d(logf, bandwidth);
    LayerStructure ls;
    ls.ego_id = active.ego_id;
    ls.bandwidth = bandwidth;
    ls.num_circles = clusters.size();
    std::size_t cumulative = 0;
    for (std::size_t r = 0; r < clusters.size(); ++r) {
        double sum = 0.0;
        for (std::size_t i : clusters[r].members) {
            ls.ring_of.emplace(*alters[i], static_cast<int>(r + 1));
            sum += active.ties.at(*alters[i]).frequency_per_year;
        }
        const std::size_t n = clusters[r].members.size();
        cumulative += n;
        ls.ring_sizes.push_back(n);
        ls.circle_sizes.push_back(cumulative);
        ls.ring_mean_frequency.push_back(sum / static_cast<double>(n));
    }
    ls.scaling_ratios = scaling_ratios(ls);
    return ls;
}

std::vector<double> scaling_ratios(const LayerStructure& ls) {
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < ls.circle_sizes.size(); ++k) {
        out.push_back(static_cast<double>(ls.circle_sizes[k + 1]) / static_cast<double>(ls.circle_sizes[k]));
    }
    return out;
}

}  // namespace egonet
