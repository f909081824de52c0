#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dashsnap {

/// A proleptic-Gregorian calendar date with day resolution.
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::sys_days days) : days_(days) {}
  Date(int year, unsigned month, unsigned day);

  static std::optional<Date> parse(std::string_view iso);
  /// Throws Error(InvalidValue) on malformed input.
  static Date from_iso(std::string_view iso);

  std::chrono::sys_days sys_days() const { return days_; }
  std::int64_t serial() const { return days_.time_since_epoch().count(); }
  std::chrono::year_month_day ymd() const { return {days_}; }

  Date plus_days(std::int64_t n) const {
    return Date{days_ + std::chrono::days{n}};
  }
  std::string iso() const;

  friend auto operator<=>(const Date&, const Date&) = default;
  friend bool operator==(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

inline std::int64_t days_between(const Date& from, const Date& to) {
  return to.serial() - from.serial();
}

enum class DurationUnit { Day, Week, Month, Quarter, Year };

std::string_view unit_name(DurationUnit unit);
std::optional<DurationUnit> unit_from_name(std::string_view name);

/// A calendar duration such as "1 month" or "2 weeks".
struct Duration {
  std::int64_t count = 1;
  DurationUnit unit = DurationUnit::Day;

  /// Parses "<count> <unit>", accepting singular and plural unit names.
  static std::optional<Duration> parse(std::string_view text);
  std::string str() const;

  Duration times(std::int64_t k) const { return {count * k, unit}; }

  friend bool operator==(const Duration&, const Duration&) = default;
};

/// Month, quarter and year steps clamp the day-of-month to the target
/// month's length: 2022-01-31 + 1 month = 2022-02-28.
Date add(const Date& date, const Duration& duration);

/// Time of day with minute resolution, written "HH:MM".
struct TimeOfDay {
  int hour = 0;
  int minute = 0;

  static std::optional<TimeOfDay> parse(std::string_view text);
  std::string str() const;
  int seconds() const { return hour * 3600 + minute * 60; }

  friend auto operator<=>(const TimeOfDay&, const TimeOfDay&) = default;
};

/// Seconds since the Unix epoch, UTC, no leap seconds.
class Timestamp {
 public:
  constexpr Timestamp() = default;
  constexpr explicit Timestamp(std::int64_t seconds) : seconds_(seconds) {}
  Timestamp(const Date& date, int seconds_of_day);
  Timestamp(const Date& date, const TimeOfDay& time)
      : Timestamp(date, time.seconds()) {}

  /// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM" and "YYYY-MM-DDTHH:MM:SS",
  /// with an optional trailing "Z".
  static std::optional<Timestamp> parse(std::string_view text);
  static Timestamp from_iso(std::string_view text);

  std::int64_t seconds() const { return seconds_; }
  Date date() const;
  int seconds_of_day() const;
  /// "YYYY-MM-DDTHH:MM:SS"
  std::string iso() const;

  Timestamp plus_seconds(std::int64_t s) const { return Timestamp{seconds_ + s}; }

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;

 private:
  std::int64_t seconds_ = 0;
};

/// Source of "now". Everything time-dependent takes one of these so tests and
/// the scenario runner can drive time explicitly.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp now() const = 0;
};

class FixedClock final : public Clock {
 public:
  explicit FixedClock(Timestamp now) : now_(now) {}
  Timestamp now() const override { return now_; }
  void set(Timestamp now) { now_ = now; }
  void advance(const Duration& d);
  void advance_seconds(std::int64_t s) { now_ = now_.plus_seconds(s); }

 private:
  Timestamp now_;
};

class SystemClock final : public Clock {
 public:
  Timestamp now() const override;
};

}  // namespace dashsnap
