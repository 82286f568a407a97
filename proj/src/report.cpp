#include "newstraject/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "newstraject/corpus.hpp"
#include "newstraject/errors.hpp"

namespace newstraject {

namespace {

std::string f2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

const char* kPalette[12] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                            "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};

// Linear white-to-blue ramp for heatmap intensities in [0,1].
std::string ramp_color(double t) {
    const int r = static_cast<int>(std::lround(255.0 + t * (31.0 - 255.0)));
    const int g = static_cast<int>(std::lround(255.0 + t * (119.0 - 255.0)));
    const int b = static_cast<int>(std::lround(255.0 + t * (180.0 - 255.0)));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

class Svg {
public:
    Svg(int width, int height) : width_(width), height_(height) {}

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& stroke = "") {
        body_ += "  <rect x=\"" + f2(x) + "\" y=\"" + f2(y) + "\" width=\"" + f2(w) +
                 "\" height=\"" + f2(h) + "\" fill=\"" + fill + "\"";
        if (!stroke.empty()) body_ += " stroke=\"" + stroke + "\" stroke-width=\"0.50\"";
        body_ += "/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke) {
        body_ += "  <line x1=\"" + f2(x1) + "\" y1=\"" + f2(y1) + "\" x2=\"" + f2(x2) +
                 "\" y2=\"" + f2(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"1.00\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke) {
        body_ += "  <polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1.50\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i > 0) body_ += " ";
            body_ += f2(pts[i].first) + "," + f2(pts[i].second);
        }
        body_ += "\"/>\n";
    }

    void text(double x, double y, const std::string& content, int size = 12,
              const std::string& anchor = "start") {
        body_ += "  <text x=\"" + f2(x) + "\" y=\"" + f2(y) + "\" font-family=\"sans-serif\" font-size=\"" +
                 std::to_string(size) + "\" text-anchor=\"" + anchor + "\" fill=\"#333333\">" +
                 xml_escape(content) + "</text>\n";
    }

    void raw(const std::string& fragment) { body_ += fragment; }

    std::string str() const {
        std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
               std::to_string(width_) + "\" height=\"" + std::to_string(height_) + "\" viewBox=\"0 0 " +
               std::to_string(width_) + " " + std::to_string(height_) + "\">\n";
        out += "  <rect x=\"0.00\" y=\"0.00\" width=\"" + f2(width_) + "\" height=\"" + f2(height_) +
               "\" fill=\"#ffffff\"/>\n";
        out += body_;
        out += "</svg>\n";
        return out;
    }

private:
    int width_;
    int height_;
    std::string body_;
};

struct PlotArea {
    double left, top, right, bottom;
    double w() const { return right - left; }
    double h() const { return bottom - top; }
};

// Sparse x labels so long bin axes stay readable.
int label_stride(int bins) { return bins <= 12 ? 1 : (bins + 11) / 12; }

void draw_x_axis(Svg& svg, const PlotArea& area, const TimeBins& bins,
                 const std::vector<double>& centers) {
    svg.line(area.left, area.bottom, area.right, area.bottom, "#333333");
    const int stride = label_stride(bins.count);
    for (int b = 0; b < bins.count; ++b) {
        if (b % stride != 0 && b != bins.count - 1) continue;
        svg.line(centers[static_cast<std::size_t>(b)], area.bottom,
                 centers[static_cast<std::size_t>(b)], area.bottom + 4.0, "#333333");
        svg.text(centers[static_cast<std::size_t>(b)], area.bottom + 18.0,
                 bins.start(b).to_iso(), 10, "middle");
    }
}

void draw_y_axis(Svg& svg, const PlotArea& area, double max_value) {
    svg.line(area.left, area.top, area.left, area.bottom, "#333333");
    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double frac = static_cast<double>(i) / ticks;
        const double y = area.bottom - frac * area.h();
        svg.line(area.left - 4.0, y, area.left, y, "#333333");
        const double value = frac * max_value;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", value);
        svg.text(area.left - 8.0, y + 4.0, buf, 10, "end");
    }
}

}  // namespace

void ChartSpec::validate() const {
    if (width < 1 || height < 1) throw DataError("chart dimensions must be positive");
}

void emit_chart(const ChartSpec& spec, const TopicsOverTime& data, const std::string& path) {
    spec.validate();
    const int k = static_cast<int>(data.cells.size());
    const int nr_bins = data.bins.count;
    if (k == 0 || nr_bins == 0) throw DataError("chart selection is empty");

    if (spec.kind == ChartKind::trajectory_heatmap)
        throw DataError("heatmap charts take trajectory cells, not topics over time");
    if (spec.kind == ChartKind::topic_volume_bars && (spec.topic < 0 || spec.topic >= k))
        throw DataError("unknown topic id " + std::to_string(spec.topic));

    Svg svg(spec.width, spec.height);
    const PlotArea area{70.0, 40.0,
                        spec.kind == ChartKind::topic_evolution_lines ? spec.width - 130.0
                                                                      : spec.width - 30.0,
                        spec.height - 60.0};

    std::size_t max_freq = 0;
    for (int t = 0; t < k; ++t) {
        if (spec.kind == ChartKind::topic_volume_bars && t != spec.topic) continue;
        for (int b = 0; b < nr_bins; ++b)
            max_freq = std::max(max_freq,
                                data.cells[static_cast<std::size_t>(t)][static_cast<std::size_t>(b)].frequency);
    }
    const double y_max = max_freq == 0 ? 1.0 : static_cast<double>(max_freq);

    std::vector<double> centers(static_cast<std::size_t>(nr_bins));
    for (int b = 0; b < nr_bins; ++b)
        centers[static_cast<std::size_t>(b)] =
            area.left + (static_cast<double>(b) + 0.5) * area.w() / nr_bins;

    svg.text(spec.width / 2.0, 24.0, spec.title, 16, "middle");
    draw_y_axis(svg, area, y_max);
    draw_x_axis(svg, area, data.bins, centers);

    if (spec.kind == ChartKind::topic_evolution_lines) {
        for (int t = 0; t < k; ++t) {
            std::vector<std::pair<double, double>> pts;
            pts.reserve(static_cast<std::size_t>(nr_bins));
            for (int b = 0; b < nr_bins; ++b) {
                const auto freq =
                    data.cells[static_cast<std::size_t>(t)][static_cast<std::size_t>(b)].frequency;
                pts.emplace_back(centers[static_cast<std::size_t>(b)],
                                 area.bottom - static_cast<double>(freq) / y_max * area.h());
            }
            const std::string color = kPalette[static_cast<std::size_t>(t) % 12];
            svg.polyline(pts, color);
            const double ly = area.top + 16.0 * t;
            svg.rect(area.right + 12.0, ly - 8.0, 10.0, 10.0, color);
            svg.text(area.right + 26.0, ly + 1.0, "topic " + std::to_string(t), 11);
        }
    } else {
        const auto& row = data.cells[static_cast<std::size_t>(spec.topic)];
        const double slot = area.w() / nr_bins;
        const double bar_w = slot * 0.7;
        for (int b = 0; b < nr_bins; ++b) {
            const double h =
                static_cast<double>(row[static_cast<std::size_t>(b)].frequency) / y_max * area.h();
            svg.rect(centers[static_cast<std::size_t>(b)] - bar_w / 2.0, area.bottom - h, bar_w, h,
                     kPalette[0]);
        }
    }

    write_file(path, svg.str());
}

void emit_chart(const ChartSpec& spec, const std::vector<TrajectoryCell>& cells,
                const TimeBins& bins, const std::string& path) {
    spec.validate();
    if (spec.kind != ChartKind::trajectory_heatmap)
        throw DataError("trajectory cells can only feed a heatmap chart");
    if (cells.empty()) throw DataError("chart selection is empty");

    std::set<std::string> region_set;
    bool topic_seen = false;
    for (const auto& cell : cells) {
        region_set.insert(cell.region);
        if (cell.topic == spec.topic) topic_seen = true;
    }
    if (!topic_seen) throw DataError("unknown topic id " + std::to_string(spec.topic));
    const std::vector<std::string> regions(region_set.begin(), region_set.end());

    std::map<std::pair<std::size_t, int>, std::size_t> counts;  // (region idx, bin) -> count
    std::size_t max_count = 0;
    for (const auto& cell : cells) {
        if (cell.topic != spec.topic) continue;
        const auto region_idx = static_cast<std::size_t>(
            std::lower_bound(regions.begin(), regions.end(), cell.region) - regions.begin());
        counts[{region_idx, cell.bin}] += cell.count;
        max_count = std::max(max_count, counts[{region_idx, cell.bin}]);
    }

    Svg svg(spec.width, spec.height);
    const PlotArea area{110.0, 40.0, spec.width - 90.0, spec.height - 60.0};
    svg.text(spec.width / 2.0, 24.0, spec.title, 16, "middle");

    const double cell_w = area.w() / bins.count;
    const double cell_h = area.h() / static_cast<double>(regions.size());
    for (std::size_t r = 0; r < regions.size(); ++r) {
        for (int b = 0; b < bins.count; ++b) {
            std::size_t count = 0;
            if (auto it = counts.find({r, b}); it != counts.end()) count = it->second;
            const double t =
                max_count == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(max_count);
            svg.rect(area.left + b * cell_w, area.top + static_cast<double>(r) * cell_h, cell_w,
                     cell_h, ramp_color(t), "#cccccc");
        }
        svg.text(area.left - 8.0, area.top + (static_cast<double>(r) + 0.5) * cell_h + 4.0,
                 regions[r], 11, "end");
    }

    std::vector<double> centers(static_cast<std::size_t>(bins.count));
    for (int b = 0; b < bins.count; ++b)
        centers[static_cast<std::size_t>(b)] = area.left + (static_cast<double>(b) + 0.5) * cell_w;
    draw_x_axis(svg, area, bins, centers);

    // Legend: vertical ramp with the count extremes.
    const double lx = area.right + 24.0;
    svg.raw("  <defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">"
            "<stop offset=\"0\" stop-color=\"" + ramp_color(0.0) + "\"/>"
            "<stop offset=\"1\" stop-color=\"" + ramp_color(1.0) + "\"/>"
            "</linearGradient></defs>\n");
    svg.rect(lx, area.top, 14.0, area.h(), "url(#ramp)", "#cccccc");
    svg.text(lx + 18.0, area.top + 10.0, std::to_string(max_count), 10);
    svg.text(lx + 18.0, area.bottom, "0", 10);

    write_file(path, svg.str());
}

}  // namespace newstraject
