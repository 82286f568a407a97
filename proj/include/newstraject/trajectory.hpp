#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "newstraject/corpus.hpp"
#include "newstraject/timebins.hpp"

namespace newstraject {

struct TrajectoryCell {
    int topic = 0;
    int bin = 0;
    std::string region;
    std::size_t count = 0;

    bool operator==(const TrajectoryCell&) const = default;
};

enum class Phase { hot, cold };

// Phase per (topic, bin) for every topic present in the cells. Bins with no
// articles still get a phase (cold unless the mean is negative, which it
// never is).
using HotColdSeries = std::map<std::pair<int, int>, Phase>;

struct TrajectoryTable {
    TimeBins bins;
    std::vector<TrajectoryCell> cells;  // (topic, bin, region) ascending, zero counts omitted
    HotColdSeries phases;
};

// Counts documents per (topic, bin, region). Bins span the corpus timestamps
// exactly as in topics_over_time.
std::vector<TrajectoryCell> aggregate_trajectory(const std::vector<int>& assignment,
                                                 const std::vector<Document>& docs,
                                                 const TimeBins& bins);

// A bin is hot when its per-topic count exceeds ratio times the topic's mean
// per-bin count; zero-count bins participate in the mean.
HotColdSeries hot_cold(const std::vector<TrajectoryCell>& cells, int nr_bins, double ratio = 1.0);

// topic_id,bin_start,bin_end,region,count,phase
void write_trajectory_csv(const std::string& path, const TrajectoryTable& table);

}  // namespace newstraject
