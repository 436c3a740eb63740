#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

namespace sage {

/// Calendar date stored as days since 1970-01-01 (local civil date, no timezone).
struct Date {
    std::int32_t days = 0;

    auto operator<=>(const Date&) const = default;

    Date operator+(int d) const { return Date{days + d}; }
    Date operator-(int d) const { return Date{days - d}; }
    int operator-(const Date& other) const { return days - other.days; }

    static Date from_ymd(int year, unsigned month, unsigned day) {
        using namespace std::chrono;
        const sys_days sd = year_month_day{std::chrono::year{year}, std::chrono::month{month},
                                           std::chrono::day{day}};
        return Date{static_cast<std::int32_t>(sd.time_since_epoch().count())};
    }

    std::string to_string() const {
        using namespace std::chrono;
        const year_month_day ymd{sys_days{std::chrono::days{days}}};
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
        return buf;
    }
};

/// Time of day in seconds since midnight.
struct TimeOfDay {
    std::int32_t seconds = 0;

    auto operator<=>(const TimeOfDay&) const = default;

    static TimeOfDay from_hm(int hour, int minute, int second = 0) {
        return TimeOfDay{hour * 3600 + minute * 60 + second};
    }

    std::string to_string() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d", seconds / 3600, (seconds / 60) % 60,
                      seconds % 60);
        return buf;
    }
};

/// Local date + time of day; ordering is chronological.
struct Timestamp {
    Date date;
    TimeOfDay time;

    auto operator<=>(const Timestamp&) const = default;

    std::string to_string() const { return date.to_string() + "T" + time.to_string(); }
};

/// Parses "YYYY-MM-DD". Returns nullopt on malformed input or out-of-range fields.
std::optional<Date> parse_date(const std::string& text);

/// Parses "HH:MM" or "HH:MM:SS".
std::optional<TimeOfDay> parse_time_of_day(const std::string& text);

/// Parses ISO-8601 "YYYY-MM-DD[( |T)HH:MM[:SS]]"; a bare date means midnight.
std::optional<Timestamp> parse_timestamp(const std::string& text);

}  // namespace sage
