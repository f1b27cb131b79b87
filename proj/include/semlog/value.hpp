#ifndef SEMLOG_VALUE_HPP
#define SEMLOG_VALUE_HPP

#include <cstdint>
#include <string>
#include <variant>

namespace semlog {

/// UTC instant with the source timezone offset kept so a read/write
/// round trip reproduces the serialized timestamp exactly.
struct Timestamp {
  std::int64_t utc_millis = 0;
  std::int32_t tz_offset_minutes = 0;

  friend bool operator==(const Timestamp& a, const Timestamp& b) {
    return a.utc_millis == b.utc_millis &&
           a.tz_offset_minutes == b.tz_offset_minutes;
  }
  friend bool operator<(const Timestamp& a, const Timestamp& b) {
    if (a.utc_millis != b.utc_millis) return a.utc_millis < b.utc_millis;
    return a.tz_offset_minutes < b.tz_offset_minutes;
  }
};

enum class AttrKind { String, Integer, Real, Boolean, Timestamp };

class AttributeValue {
 public:
  AttributeValue() : v_(std::string{}) {}
  explicit AttributeValue(std::string s) : v_(std::move(s)) {}
  explicit AttributeValue(const char* s) : v_(std::string(s)) {}
  explicit AttributeValue(std::int64_t i) : v_(i) {}
  explicit AttributeValue(double d) : v_(d) {}
  explicit AttributeValue(bool b) : v_(b) {}
  explicit AttributeValue(Timestamp t) : v_(t) {}

  AttrKind kind() const { return static_cast<AttrKind>(v_.index()); }

  bool is_text() const { return kind() == AttrKind::String; }
  const std::string& text() const { return std::get<std::string>(v_); }
  std::int64_t integer() const { return std::get<std::int64_t>(v_); }
  double real() const { return std::get<double>(v_); }
  bool boolean() const { return std::get<bool>(v_); }
  const Timestamp& timestamp() const { return std::get<Timestamp>(v_); }

  /// Canonical text rendering: strings as-is, numbers in shortest
  /// round-trip form, booleans as true/false, timestamps as ISO-8601.
  std::string to_display_string() const;

  friend bool operator==(const AttributeValue& a, const AttributeValue& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const AttributeValue& a, const AttributeValue& b) {
    return !(a == b);
  }
  friend bool operator<(const AttributeValue& a, const AttributeValue& b);

 private:
  std::variant<std::string, std::int64_t, double, bool, Timestamp> v_;
};

std::string_view attr_kind_name(AttrKind k);

/// Shortest round-trip decimal rendering of a double.
std::string render_double(double d);

/// ISO-8601 with explicit offset, millisecond precision. Offset 0 renders
/// as "Z". Example: 2011-04-13T14:02:31.199+02:00
std::string render_timestamp(const Timestamp& t);

/// Accepts YYYY-MM-DDTHH:MM:SS with optional fractional seconds and an
/// optional Z / +HH:MM / -HHMM suffix (absent means UTC). Throws
/// FormatError on anything else; `line` is attached to the message.
Timestamp parse_timestamp(const std::string& text, std::size_t line = 0);

}  // namespace semlog

#endif
