#include "semlog/value.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "semlog/errors.hpp"

namespace semlog {

namespace {

// variant index doubles as the comparison rank
int kind_rank(const AttributeValue& v) { return static_cast<int>(v.kind()); }

std::int64_t civil_to_days(int y, unsigned m, unsigned d) {
  using namespace std::chrono;
  return sys_days{year{y} / month{m} / day{d}}.time_since_epoch().count();
}

void days_to_civil(std::int64_t days, int& y, unsigned& m, unsigned& d) {
  using namespace std::chrono;
  year_month_day ymd{sys_days{std::chrono::days{days}}};
  y = int(ymd.year());
  m = unsigned(ymd.month());
  d = unsigned(ymd.day());
}

}  // namespace

bool operator<(const AttributeValue& a, const AttributeValue& b) {
  if (kind_rank(a) != kind_rank(b)) return kind_rank(a) < kind_rank(b);
  switch (a.kind()) {
    case AttrKind::String: return a.text() < b.text();
    case AttrKind::Integer: return a.integer() < b.integer();
    case AttrKind::Real: return a.real() < b.real();
    case AttrKind::Boolean: return a.boolean() < b.boolean();
    case AttrKind::Timestamp: return a.timestamp() < b.timestamp();
  }
  return false;
}

std::string_view attr_kind_name(AttrKind k) {
  switch (k) {
    case AttrKind::String: return "string";
    case AttrKind::Integer: return "int";
    case AttrKind::Real: return "float";
    case AttrKind::Boolean: return "boolean";
    case AttrKind::Timestamp: return "date";
  }
  return "string";
}

std::string render_double(double d) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, r.ptr);
}

std::string AttributeValue::to_display_string() const {
  switch (kind()) {
    case AttrKind::String: return text();
    case AttrKind::Integer: return std::to_string(integer());
    case AttrKind::Real: return render_double(real());
    case AttrKind::Boolean: return boolean() ? "true" : "false";
    case AttrKind::Timestamp: return render_timestamp(timestamp());
  }
  return {};
}

std::string render_timestamp(const Timestamp& t) {
  std::int64_t local = t.utc_millis + std::int64_t(t.tz_offset_minutes) * 60'000;
  std::int64_t days = local / 86'400'000;
  std::int64_t rem = local % 86'400'000;
  if (rem < 0) {
    rem += 86'400'000;
    days -= 1;
  }
  int y;
  unsigned mo, dd;
  days_to_civil(days, y, mo, dd);
  int hh = int(rem / 3'600'000);
  int mi = int(rem / 60'000 % 60);
  int ss = int(rem / 1'000 % 60);
  int ms = int(rem % 1'000);
  char buf[48];
  int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03d",
                        y, mo, dd, hh, mi, ss, ms);
  std::string out(buf, std::size_t(n));
  if (t.tz_offset_minutes == 0) {
    out += 'Z';
  } else {
    int off = t.tz_offset_minutes;
    char sign = off < 0 ? '-' : '+';
    if (off < 0) off = -off;
    std::snprintf(buf, sizeof buf, "%c%02d:%02d", sign, off / 60, off % 60);
    out += buf;
  }
  return out;
}

namespace {

int parse_fixed_int(const std::string& s, std::size_t pos, std::size_t len,
                    std::size_t line) {
  if (pos + len > s.size()) throw FormatError("truncated timestamp: " + s, line);
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw FormatError("bad digit in timestamp: " + s, line);
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

}  // namespace

Timestamp parse_timestamp(const std::string& s, std::size_t line) {
  // YYYY-MM-DDTHH:MM:SS[.frac][Z|±HH:MM|±HHMM]
  if (s.size() < 19 || s[4] != '-' || s[7] != '-' ||
      (s[10] != 'T' && s[10] != 't' && s[10] != ' ') || s[13] != ':' ||
      s[16] != ':')
    throw FormatError("malformed timestamp: " + s, line);
  int y = parse_fixed_int(s, 0, 4, line);
  int mo = parse_fixed_int(s, 5, 2, line);
  int dd = parse_fixed_int(s, 8, 2, line);
  int hh = parse_fixed_int(s, 11, 2, line);
  int mi = parse_fixed_int(s, 14, 2, line);
  int ss = parse_fixed_int(s, 17, 2, line);
  if (mo < 1 || mo > 12 || dd < 1 || dd > 31 || hh > 23 || mi > 59 || ss > 60)
    throw FormatError("timestamp field out of range: " + s, line);

  std::size_t pos = 19;
  int millis = 0;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) throw FormatError("empty fraction in timestamp: " + s, line);
    // millisecond precision; extra digits are truncated
    int scale = 100;
    for (std::size_t i = start; i < pos && scale > 0; ++i, scale /= 10)
      millis += (s[i] - '0') * scale;
  }

  int offset = 0;
  if (pos < s.size()) {
    char c = s[pos];
    if (c == 'Z' || c == 'z') {
      ++pos;
    } else if (c == '+' || c == '-') {
      ++pos;
      int oh = parse_fixed_int(s, pos, 2, line);
      pos += 2;
      if (pos < s.size() && s[pos] == ':') ++pos;
      int om = parse_fixed_int(s, pos, 2, line);
      pos += 2;
      offset = oh * 60 + om;
      if (c == '-') offset = -offset;
    }
  }
  if (pos != s.size())
    throw FormatError("trailing characters in timestamp: " + s, line);

  std::int64_t days = civil_to_days(y, unsigned(mo), unsigned(dd));
  std::int64_t local =
      days * 86'400'000 +
      (std::int64_t(hh) * 3'600 + mi * 60 + ss) * 1'000 + millis;
  Timestamp t;
  t.tz_offset_minutes = offset;
  t.utc_millis = local - std::int64_t(offset) * 60'000;
  return t;
}

}  // namespace semlog
