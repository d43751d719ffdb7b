#include "pension/dates.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace pension {

namespace {

bool leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 13> lengths = {0,  31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (month == 2 && leap(year)) return 29;
    return lengths[static_cast<std::size_t>(month)];
}

bool parse_int(std::string_view text, int& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

}  // namespace

bool is_valid(const Date& d) {
    if (d.month < 1 || d.month > 12) return false;
    if (d.day < 1 || d.day > days_in_month(d.year, d.month)) return false;
    return true;
}

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    Date d;
    if (!parse_int(text.substr(0, 4), d.year)) return std::nullopt;
    if (!parse_int(text.substr(5, 2), d.month)) return std::nullopt;
    if (!parse_int(text.substr(8, 2), d.day)) return std::nullopt;
    if (!is_valid(d)) return std::nullopt;
    return d;
}

std::string to_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

int months_between(const Date& from, const Date& to) {
    if (to < from) return -months_between(to, from);
    int whole = (to.year - from.year) * 12 + (to.month - from.month);
    if (to.day < from.day) --whole;
    return whole;
}

Date add_months(const Date& d, int months) {
    int index = d.year * 12 + (d.month - 1) + months;
    int year = index / 12;
    int month = index % 12;
    if (month < 0) {
        month += 12;
        --year;
    }
    Date out{year, month + 1, d.day};
    int cap = days_in_month(out.year, out.month);
    if (out.day > cap) out.day = cap;
    return out;
}

}  // namespace pension
