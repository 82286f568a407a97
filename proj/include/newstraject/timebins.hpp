#pragma once

#include <vector>

#include "newstraject/date.hpp"

namespace newstraject {

// Equal-width bins over the inclusive day span [min, max]. A timestamp maps
// to floor((t - min) * count / span); t == max folds into the last bin, so
// every bin is half-open except the last, which is closed on the right.
struct TimeBins {
    Date min;
    Date max;
    int count = 0;

    // Edges from the corpus span; throws DataError on empty input or count < 1.
    static TimeBins over(const std::vector<Date>& timestamps, int count);

    int index_of(Date t) const;  // throws DataError outside [min, max]
    Date start(int bin) const;   // inclusive lower edge
    Date end(int bin) const;     // exclusive upper edge; the last bin's is max itself

    bool operator==(const TimeBins&) const = default;
};

}  // namespace newstraject
