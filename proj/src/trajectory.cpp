#include "newstraject/trajectory.hpp"

#include <algorithm>
#include <tuple>

#include "newstraject/csv.hpp"
#include "newstraject/errors.hpp"

namespace newstraject {

std::vector<TrajectoryCell> aggregate_trajectory(const std::vector<int>& assignment,
                                                 const std::vector<Document>& docs,
                                                 const TimeBins& bins) {
    if (assignment.size() != docs.size())
        throw DataError("trajectory: " + std::to_string(docs.size()) + " documents but " +
                        std::to_string(assignment.size()) + " topic assignments");

    std::map<std::tuple<int, int, std::string>, std::size_t> counts;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const int topic = assignment[i];
        if (topic < 0) throw DataError("trajectory: document " + docs[i].id + " is unassigned");
        const int bin = bins.index_of(docs[i].timestamp);
        ++counts[{topic, bin, docs[i].region}];
    }

    std::vector<TrajectoryCell> cells;
    cells.reserve(counts.size());
    for (const auto& [key, count] : counts)
        cells.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
    return cells;  // map iteration is already (topic, bin, region) ascending
}

HotColdSeries hot_cold(const std::vector<TrajectoryCell>& cells, int nr_bins, double ratio) {
    if (nr_bins < 1) throw DataError("hot/cold needs at least 1 bin");
    if (!(ratio > 0.0)) throw DataError("hot ratio must be positive");

    std::map<int, std::vector<std::size_t>> per_topic;  // topic -> per-bin totals
    for (const auto& cell : cells) {
        auto& bins = per_topic[cell.topic];
        if (bins.empty()) bins.assign(static_cast<std::size_t>(nr_bins), 0);
        if (cell.bin < 0 || cell.bin >= nr_bins)
            throw DataError("hot/cold: bin index " + std::to_string(cell.bin) + " out of range");
        bins[static_cast<std::size_t>(cell.bin)] += cell.count;
    }

    HotColdSeries series;
    for (const auto& [topic, bins] : per_topic) {
        std::size_t total = 0;
        for (std::size_t c : bins) total += c;
        for (int b = 0; b < nr_bins; ++b) {
            // count > ratio * total/nr_bins, kept multiplied through so the
            // default ratio compares integers exactly.
            const bool hot = static_cast<double>(bins[static_cast<std::size_t>(b)]) *
                                 static_cast<double>(nr_bins) >
                             ratio * static_cast<double>(total);
            series[{topic, b}] = hot ? Phase::hot : Phase::cold;
        }
    }
    return series;
}

void write_trajectory_csv(const std::string& path, const TrajectoryTable& table) {
    std::string out = "topic_id,bin_start,bin_end,region,count,phase\n";
    for (const auto& cell : table.cells) {
        const auto phase = table.phases.at({cell.topic, cell.bin});
        out += csv::join_row({std::to_string(cell.topic), table.bins.start(cell.bin).to_iso(),
                              table.bins.end(cell.bin).to_iso(), cell.region,
                              std::to_string(cell.count),
                              phase == Phase::hot ? "hot" : "cold"}) +
               "\n";
    }
    write_file(path, out);
}

}  // namespace newstraject
