#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace evdr {

// Calendar date, no time zone attached. All timestamps in this project are
// site-local wall-clock values; tariff periods are wall-clock defined, so we
// never convert to UTC.
struct Date {
    int year = 0;
    int month = 0; // 1..12
    int day = 0;   // 1..31

    bool operator==(const Date&) const = default;
    auto operator<=>(const Date&) const = default;

    std::string to_string() const; // YYYY-MM-DD
};

// Local wall-clock timestamp: a date plus minute-of-day [0, 1440).
struct LocalTime {
    Date date;
    int minute_of_day = 0;

    bool operator==(const LocalTime&) const = default;
    auto operator<=>(const LocalTime&) const = default;

    std::string to_string() const; // YYYY-MM-DDTHH:MM
};

int days_in_month(int year, int month);
bool is_leap_year(int year);
// 0 = Sunday ... 6 = Saturday
int day_of_week(const Date& d);
bool is_weekend(const Date& d);
Date next_day(const Date& d);
// days since 0001-01-01 (proleptic Gregorian); used for date arithmetic
std::int64_t day_ordinal(const Date& d);

// Parses "YYYY-MM-DD". Throws DataError on malformed input.
Date parse_date(const std::string& s);
// Parses "YYYY-MM-DDTHH:MM[:SS]" (space also accepted as separator, trailing
// timezone designators rejected: inputs are site-local by contract).
LocalTime parse_local_time(const std::string& s);
// Parses "HH:MM" into minute-of-day; "24:00" allowed as end-of-day = 1440.
int parse_minute_of_day(const std::string& s);

// Uniform step grid over one calendar month. Step t of day d covers local
// wall-clock minutes [t*dt, (t+1)*dt). dt must divide 24h evenly.
class MonthGrid {
public:
    MonthGrid(int year, int month, int dt_minutes);

    int year() const { return year_; }
    int month() const { return month_; }
    int dt_minutes() const { return dt_minutes_; }
    double dt_hours() const { return dt_minutes_ / 60.0; }
    int days() const { return days_; }
    int steps_per_day() const { return steps_; }

    Date date_of(int day_index) const;
    // -1 when the date is outside this month
    int day_index_of(const Date& d) const;
    int step_of_minute(int minute_of_day) const { return minute_of_day / dt_minutes_; }
    int minute_of_step(int step) const { return step * dt_minutes_; }

    bool operator==(const MonthGrid&) const = default;

private:
    int year_;
    int month_;
    int dt_minutes_;
    int days_;
    int steps_;
};

// Dense per-step series over a MonthGrid, indexed [day][step].
// Used for baseloads, prices, rate tables and period masks.
template <typename T>
class DaySeries {
public:
    DaySeries() = default;
    DaySeries(int days, int steps, T fill = T{})
        : days_(days), steps_(steps), data_(static_cast<size_t>(days) * steps, fill) {}

    int days() const { return days_; }
    int steps() const { return steps_; }
    T& at(int d, int t) { return data_[static_cast<size_t>(d) * steps_ + t]; }
    const T& at(int d, int t) const { return data_[static_cast<size_t>(d) * steps_ + t]; }
    const std::vector<T>& flat() const { return data_; }
    std::vector<T>& flat() { return data_; }
    bool empty() const { return data_.empty(); }

private:
    int days_ = 0;
    int steps_ = 0;
    std::vector<T> data_;
};

} // namespace evdr
