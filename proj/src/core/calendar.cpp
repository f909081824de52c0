#include "dashsnap/core/calendar.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "dashsnap/core/error.hpp"

namespace dashsnap {

namespace chr = std::chrono;

namespace {

bool parse_uint(std::string_view text, int& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

Date add_months(const Date& date, std::int64_t months) {
  auto ymd = date.ymd();
  auto shifted = chr::year_month{ymd.year(), ymd.month()} + chr::months{months};
  auto last = chr::year_month_day_last{shifted.year(), chr::month_day_last{shifted.month()}};
  auto day = ymd.day() > last.day() ? last.day() : ymd.day();
  return Date{chr::sys_days{chr::year_month_day{shifted.year(), shifted.month(), day}}};
}

}  // namespace

Date::Date(int year, unsigned month, unsigned day) {
  chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
  if (!ymd.ok()) {
    throw Error(Code::InvalidValue, "invalid calendar date");
  }
  days_ = chr::sys_days{ymd};
}

std::optional<Date> Date::parse(std::string_view iso) {
  iso = trim(iso);
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_uint(iso.substr(0, 4), y) || !parse_uint(iso.substr(5, 2), m) ||
      !parse_uint(iso.substr(8, 2), d)) {
    return std::nullopt;
  }
  chr::year_month_day ymd{chr::year{y}, chr::month{static_cast<unsigned>(m)},
                          chr::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{chr::sys_days{ymd}};
}

Date Date::from_iso(std::string_view iso) {
  auto d = parse(iso);
  if (!d) throw Error(Code::InvalidValue, "not an ISO date: '" + std::string(iso) + "'");
  return *d;
}

std::string Date::iso() const {
  auto ymd = this->ymd();
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string_view unit_name(DurationUnit unit) {
  switch (unit) {
    case DurationUnit::Day: return "day";
    case DurationUnit::Week: return "week";
    case DurationUnit::Month: return "month";
    case DurationUnit::Quarter: return "quarter";
    case DurationUnit::Year: return "year";
  }
  return "day";
}

std::optional<DurationUnit> unit_from_name(std::string_view name) {
  name = trim(name);
  if (name.size() > 1 && name.back() == 's') name.remove_suffix(1);
  for (auto u : {DurationUnit::Day, DurationUnit::Week, DurationUnit::Month,
                 DurationUnit::Quarter, DurationUnit::Year}) {
    if (unit_name(u) == name) return u;
  }
  return std::nullopt;
}

std::optional<Duration> Duration::parse(std::string_view text) {
  text = trim(text);
  auto space = text.find(' ');
  if (space == std::string_view::npos) return std::nullopt;
  int count = 0;
  if (!parse_uint(text.substr(0, space), count)) return std::nullopt;
  auto unit = unit_from_name(text.substr(space + 1));
  if (!unit) return std::nullopt;
  return Duration{count, *unit};
}

std::string Duration::str() const {
  std::string out = std::to_string(count) + " " + std::string(unit_name(unit));
  if (count != 1) out += "s";
  return out;
}

Date add(const Date& date, const Duration& duration) {
  switch (duration.unit) {
    case DurationUnit::Day: return date.plus_days(duration.count);
    case DurationUnit::Week: return date.plus_days(7 * duration.count);
    case DurationUnit::Month: return add_months(date, duration.count);
    case DurationUnit::Quarter: return add_months(date, 3 * duration.count);
    case DurationUnit::Year: return add_months(date, 12 * duration.count);
  }
  return date;
}

std::optional<TimeOfDay> TimeOfDay::parse(std::string_view text) {
  text = trim(text);
  auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  int h = 0, m = 0;
  if (!parse_uint(text.substr(0, colon), h) || !parse_uint(text.substr(colon + 1), m)) {
    return std::nullopt;
  }
  if (colon > 2 || text.size() - colon - 1 != 2) return std::nullopt;
  if (h > 23 || m > 59) return std::nullopt;
  return TimeOfDay{h, m};
}

std::string TimeOfDay::str() const {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%02d:%02d", hour, minute);
  return buf;
}

Timestamp::Timestamp(const Date& date, int seconds_of_day)
    : seconds_(date.serial() * 86400 + seconds_of_day) {}

std::optional<Timestamp> Timestamp::parse(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.back() == 'Z') text.remove_suffix(1);
  auto date = Date::parse(text.substr(0, std::min<std::size_t>(10, text.size())));
  if (!date) return std::nullopt;
  if (text.size() == 10) return Timestamp{*date, 0};
  if (text[10] != 'T' && text[10] != ' ') return std::nullopt;
  auto rest = text.substr(11);
  int h = 0, m = 0, s = 0;
  if (rest.size() == 5 && rest[2] == ':') {
    if (!parse_uint(rest.substr(0, 2), h) || !parse_uint(rest.substr(3, 2), m)) return std::nullopt;
  } else if (rest.size() == 8 && rest[2] == ':' && rest[5] == ':') {
    if (!parse_uint(rest.substr(0, 2), h) || !parse_uint(rest.substr(3, 2), m) ||
        !parse_uint(rest.substr(6, 2), s)) {
      return std::nullopt;
    }
  } else {
    return std::nullopt;
  }
  if (h > 23 || m > 59 || s > 59) return std::nullopt;
  return Timestamp{*date, h * 3600 + m * 60 + s};
}

Timestamp Timestamp::from_iso(std::string_view text) {
  auto t = parse(text);
  if (!t) throw Error(Code::InvalidValue, "not an ISO timestamp: '" + std::string(text) + "'");
  return *t;
}

Date Timestamp::date() const {
  auto days = seconds_ >= 0 ? seconds_ / 86400 : -((-seconds_ + 86399) / 86400);
  return Date{chr::sys_days{chr::days{days}}};
}

int Timestamp::seconds_of_day() const {
  return static_cast<int>(seconds_ - date().serial() * 86400);
}

std::string Timestamp::iso() const {
  int sod = seconds_of_day();
  char buf[32];
  std::snprintf(buf, sizeof(buf), "T%02d:%02d:%02d", sod / 3600, (sod / 60) % 60, sod % 60);
  return date().iso() + buf;
}

void FixedClock::advance(const Duration& d) {
  auto sod = now_.seconds_of_day();
  now_ = Timestamp{add(now_.date(), d), sod};
}

Timestamp SystemClock::now() const {
  auto secs = chr::duration_cast<chr::seconds>(chr::system_clock::now().time_since_epoch());
  return Timestamp{secs.count()};
}

}  // namespace dashsnap
