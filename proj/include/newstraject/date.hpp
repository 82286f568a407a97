#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace newstraject {

// Calendar date at day resolution, stored as days since 1970-01-01.
class Date {
public:
    Date() = default;

    // Strict YYYY-MM-DD; rejects impossible dates like 2019-02-29.
    static std::optional<Date> parse(std::string_view iso);
    static Date from_days(std::int64_t days) { return Date(days); }
    static Date from_civil(int year, int month, int day);

    std::int64_t days() const { return days_; }
    std::string to_iso() const;

    auto operator<=>(const Date&) const = default;

private:
    explicit Date(std::int64_t d) : days_(d) {}
    std::int64_t days_ = 0;
};

}  // namespace newstraject
