#include "newstraject/timebins.hpp"

#include <algorithm>
#include <string>

#include "newstraject/errors.hpp"

namespace newstraject {

TimeBins TimeBins::over(const std::vector<Date>& timestamps, int count) {
    if (count < 1) throw DataError("bin count must be at least 1, got " + std::to_string(count));
    if (timestamps.empty()) throw DataError("cannot bin an empty timestamp list");
    TimeBins bins;
    bins.min = *std::min_element(timestamps.begin(), timestamps.end());
    bins.max = *std::max_element(timestamps.begin(), timestamps.end());
    bins.count = count;
    return bins;
}

int TimeBins::index_of(Date t) const {
    if (t < min || t > max)
        throw DataError("timestamp " + t.to_iso() + " outside the binned span " + min.to_iso() +
                        ".." + max.to_iso());
    const std::int64_t span = max.days() - min.days();
    if (span == 0) return 0;
    const std::int64_t idx = (t.days() - min.days()) * count / span;
    return idx == count ? count - 1 : static_cast<int>(idx);
}

Date TimeBins::start(int bin) const {
    const std::int64_t span = max.days() - min.days();
    const std::int64_t offset =
        (static_cast<std::int64_t>(bin) * span + count - 1) / count;  // ceil(bin*span/count)
    return Date::from_days(min.days() + offset);
}

Date TimeBins::end(int bin) const { return start(bin + 1); }

}  // namespace newstraject
