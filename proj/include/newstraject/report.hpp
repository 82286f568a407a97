#pragma once

#include <string>
#include <vector>

#include "newstraject/topics.hpp"
#include "newstraject/trajectory.hpp"

namespace newstraject {

enum class ChartKind { topic_evolution_lines, topic_volume_bars, trajectory_heatmap };

struct ChartSpec {
    ChartKind kind = ChartKind::topic_evolution_lines;
    std::string title;
    int width = 900;
    int height = 500;
    int topic = -1;  // required by bars and heatmap; lines draw every topic

    void validate() const;
};

// Frequency-per-bin line chart (all topics) or bar chart (one topic).
// Deterministic bytes; coordinates carry exactly 2 decimals; x axis labeled
// with bin start dates.
void emit_chart(const ChartSpec& spec, const TopicsOverTime& data, const std::string& path);

// Region-by-bin heatmap for one topic. Zero-count cells are drawn at the
// zero end of the ramp, never skipped.
void emit_chart(const ChartSpec& spec, const std::vector<TrajectoryCell>& cells,
                const TimeBins& bins, const std::string& path);

}  // namespace newstraject
