#ifndef PENSION_DATES_HPP
#define PENSION_DATES_HPP

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace pension {

// Proleptic Gregorian calendar date. Age arithmetic works in whole
// calendar months: a month counts once the day-of-month is reached.
struct Date {
    int year = 0;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const Date&) const = default;
};

bool is_valid(const Date& d);

// Strict ISO-8601 "YYYY-MM-DD". Nullopt on malformed text or calendar
// dates that do not exist (2018-02-29).
std::optional<Date> parse_date(std::string_view text);

std::string to_string(const Date& d);

// Completed calendar months from `from` to `to`; negative when `to`
// precedes `from`.
int months_between(const Date& from, const Date& to);

// `d` shifted by a signed number of months, day-of-month clamped to the
// target month's length (2018-01-31 - 11 months = 2017-02-28).
Date add_months(const Date& d, int months);

}  // namespace pension

#endif
