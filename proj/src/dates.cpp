#include "sage/dates.hpp"

#include <chrono>
#include <cstdio>

namespace sage {

std::optional<Date> parse_date(const std::string& text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char trail = 0;
    if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &trail) != 3) return std::nullopt;
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                          std::chrono::day{d}};
    if (!ymd.ok()) return std::nullopt;
    return Date::from_ymd(y, m, d);
}

std::optional<TimeOfDay> parse_time_of_day(const std::string& text) {
    int h = 0, m = 0, s = 0;
    char trail = 0;
    const int n = std::sscanf(text.c_str(), "%d:%d:%d%c", &h, &m, &s, &trail);
    if (n != 2 && n != 3) return std::nullopt;
    if (h < 0 || h > 23 || m < 0 || m > 59 || s < 0 || s > 59) return std::nullopt;
    return TimeOfDay::from_hm(h, m, s);
}

std::optional<Timestamp> parse_timestamp(const std::string& text) {
    const auto sep = text.find_first_of("T ");
    if (sep == std::string::npos) {
        const auto date = parse_date(text);
        if (!date) return std::nullopt;
        return Timestamp{*date, TimeOfDay{0}};
    }
    const auto date = parse_date(text.substr(0, sep));
    const auto time = parse_time_of_day(text.substr(sep + 1));
    if (!date || !time) return std::nullopt;
    return Timestamp{*date, *time};
}

}  // namespace sage
