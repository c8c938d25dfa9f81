#include "evdr/timegrid.hpp"

#include <array>
#include <cctype>
#include <cstdio>

#include "evdr/errors.hpp"

namespace evdr {

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12)
        throw DataError("month out of range: " + std::to_string(month));
    if (month == 2 && is_leap_year(year))
        return 29;
    return lengths[month - 1];
}

int day_of_week(const Date& d) {
    // Sakamoto's method, 0 = Sunday
    static constexpr std::array<int, 12> t = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
    int y = d.year;
    if (d.month < 3)
        y -= 1;
    return (y + y / 4 - y / 100 + y / 400 + t[d.month - 1] + d.day) % 7;
}

bool is_weekend(const Date& d) {
    int w = day_of_week(d);
    return w == 0 || w == 6;
}

Date next_day(const Date& d) {
    Date n = d;
    n.day += 1;
    if (n.day > days_in_month(n.year, n.month)) {
        n.day = 1;
        n.month += 1;
        if (n.month > 12) {
            n.month = 1;
            n.year += 1;
        }
    }
    return n;
}

std::int64_t day_ordinal(const Date& d) {
    // days since 0001-01-01, standard proleptic Gregorian count
    std::int64_t y = d.year;
    std::int64_t m = d.month;
    if (m <= 2) {
        y -= 1;
        m += 12;
    }
    std::int64_t era_days = 365 * y + y / 4 - y / 100 + y / 400;
    std::int64_t month_days = (153 * (m - 3) + 2) / 5;
    return era_days + month_days + d.day - 307;
}

std::string Date::to_string() const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::string LocalTime::to_string() const {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d", date.year, date.month,
                  date.day, minute_of_day / 60, minute_of_day % 60);
    return buf;
}

namespace {

bool all_digits(const std::string& s, size_t from, size_t to) {
    if (to > s.size())
        return false;
    for (size_t i = from; i < to; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

} // namespace

Date parse_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-' || !all_digits(s, 0, 4) ||
        !all_digits(s, 5, 7) || !all_digits(s, 8, 10))
        throw DataError("malformed date (expected YYYY-MM-DD): '" + s + "'");
    Date d{std::stoi(s.substr(0, 4)), std::stoi(s.substr(5, 2)), std::stoi(s.substr(8, 2))};
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month))
        throw DataError("date out of range: '" + s + "'");
    return d;
}

int parse_minute_of_day(const std::string& s) {
    if (s.size() != 5 || s[2] != ':' || !all_digits(s, 0, 2) || !all_digits(s, 3, 5))
        throw DataError("malformed time of day (expected HH:MM): '" + s + "'");
    int h = std::stoi(s.substr(0, 2));
    int m = std::stoi(s.substr(3, 2));
    if (h == 24 && m == 0)
        return 24 * 60;
    if (h < 0 || h > 23 || m < 0 || m > 59)
        throw DataError("time of day out of range: '" + s + "'");
    return h * 60 + m;
}

LocalTime parse_local_time(const std::string& s) {
    if (s.size() < 16)
        throw DataError("malformed timestamp (expected YYYY-MM-DDTHH:MM[:SS]): '" + s + "'");
    if (s[10] != 'T' && s[10] != ' ')
        throw DataError("malformed timestamp separator: '" + s + "'");
    LocalTime lt;
    lt.date = parse_date(s.substr(0, 10));
    lt.minute_of_day = parse_minute_of_day(s.substr(11, 5));
    // optional :SS, must be digits; any timezone designator is rejected since
    // the file contract is site-local wall clock
    size_t pos = 16;
    if (pos < s.size() && s[pos] == ':') {
        if (!all_digits(s, pos + 1, pos + 3))
            throw DataError("malformed seconds field: '" + s + "'");
        pos += 3;
    }
    if (pos != s.size())
        throw DataError("trailing characters in timestamp (timezone suffixes are not "
                        "accepted; times are site-local): '" +
                        s + "'");
    return lt;
}

MonthGrid::MonthGrid(int year, int month, int dt_minutes)
    : year_(year), month_(month), dt_minutes_(dt_minutes) {
    if (dt_minutes <= 0 || (24 * 60) % dt_minutes != 0)
        throw ConfigError("dt_minutes must divide 24h evenly, got " +
                          std::to_string(dt_minutes));
    days_ = days_in_month(year, month);
    steps_ = 24 * 60 / dt_minutes;
}

Date MonthGrid::date_of(int day_index) const {
    return Date{year_, month_, day_index + 1};
}

int MonthGrid::day_index_of(const Date& d) const {
    if (d.year != year_ || d.month != month_)
        return -1;
    return d.day - 1;
}

} // namespace evdr
