#include "semlog/xes.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "semlog/errors.hpp"

namespace semlog {

namespace {

// ---------------------------------------------------------------------
// Minimal XML reader, sufficient for XES: elements, attributes, comments,
// processing instructions, and character references. No text nodes (XES
// carries data in attributes), no CDATA, no DTD.
// ---------------------------------------------------------------------

struct XmlAttr {
  std::string name;
  std::string value;
};

struct XmlElement {
  std::string name;
  std::vector<XmlAttr> attrs;
  std::vector<XmlElement> children;
  std::size_t line = 0;
  std::size_t src_begin = 0;  // span in the source buffer, tag to tag
  std::size_t src_end = 0;

  const std::string* attr(const std::string& n) const {
    for (const auto& a : attrs)
      if (a.name == n) return &a.value;
    return nullptr;
  }
};

class XmlParser {
 public:
  XmlParser(const std::string& src, const std::string& origin)
      : src_(src), origin_(origin) {}

  XmlElement parse_document() {
    if (starts_with("\xEF\xBB\xBF")) pos_ += 3;
    skip_misc();
    if (eof()) fail("no root element");
    XmlElement root = parse_element();
    skip_misc();
    if (!eof()) fail("content after root element");
    return root;
  }

 private:
  const std::string& src_;
  std::string origin_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;

  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw FormatError(origin_ + ": " + msg, line_);
  }

  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r' ||
                      peek() == '\n'))
      advance();
  }

  bool starts_with(const char* s) const {
    return src_.compare(pos_, std::string::traits_type::length(s), s) == 0;
  }

  void expect(const char* s) {
    if (!starts_with(s)) fail(std::string("expected '") + s + "'");
    for (const char* p = s; *p; ++p) advance();
  }

  // whitespace, comments, processing instructions, XML declaration
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<?")) {
        while (!eof() && !starts_with("?>")) advance();
        expect("?>");
      } else if (starts_with("<!--")) {
        while (!eof() && !starts_with("-->")) advance();
        expect("-->");
      } else {
        return;
      }
    }
  }

  static bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == ':' ||
           c == '_' || c == '-' || c == '.';
  }

  std::string parse_name() {
    std::size_t start = pos_;
    while (!eof() && is_name_char(peek())) advance();
    if (pos_ == start) fail("expected a name");
    return src_.substr(start, pos_ - start);
  }

  std::string parse_quoted() {
    if (eof() || (peek() != '"' && peek() != '\'')) fail("expected a quote");
    char quote = advance();
    std::string out;
    for (;;) {
      if (eof()) fail("unterminated attribute value");
      char c = advance();
      if (c == quote) break;
      if (c == '&')
        out += parse_entity();
      else
        out += c;
    }
    return out;
  }

  std::string parse_entity() {
    std::size_t start = pos_;
    while (!eof() && peek() != ';' && pos_ - start < 12) advance();
    if (eof() || peek() != ';') fail("unterminated entity reference");
    std::string name = src_.substr(start, pos_ - start);
    advance();  // ';'
    if (name == "amp") return "&";
    if (name == "lt") return "<";
    if (name == "gt") return ">";
    if (name == "quot") return "\"";
    if (name == "apos") return "'";
    if (!name.empty() && name[0] == '#') {
      int base = 10;
      std::size_t digits = 1;
      if (name.size() > 1 && (name[1] == 'x' || name[1] == 'X')) {
        base = 16;
        digits = 2;
      }
      unsigned long cp = 0;
      auto r = std::from_chars(name.data() + digits, name.data() + name.size(),
                               cp, base);
      if (r.ec != std::errc{} || r.ptr != name.data() + name.size())
        fail("bad character reference &" + name + ";");
      return encode_utf8(cp);
    }
    fail("unknown entity &" + name + ";");
  }

  static std::string encode_utf8(unsigned long cp) {
    std::string out;
    if (cp < 0x80) {
      out += char(cp);
    } else if (cp < 0x800) {
      out += char(0xC0 | (cp >> 6));
      out += char(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += char(0xE0 | (cp >> 12));
      out += char(0x80 | ((cp >> 6) & 0x3F));
      out += char(0x80 | (cp & 0x3F));
    } else {
      out += char(0xF0 | (cp >> 18));
      out += char(0x80 | ((cp >> 12) & 0x3F));
      out += char(0x80 | ((cp >> 6) & 0x3F));
      out += char(0x80 | (cp & 0x3F));
    }
    return out;
  }

  XmlElement parse_element() {
    XmlElement el;
    el.src_begin = pos_;
    el.line = line_;
    expect("<");
    el.name = parse_name();
    for (;;) {
      skip_ws();
      if (eof()) fail("unterminated tag <" + el.name + ">");
      if (starts_with("/>")) {
        expect("/>");
        el.src_end = pos_;
        return el;
      }
      if (peek() == '>') {
        advance();
        break;
      }
      XmlAttr a;
      a.name = parse_name();
      skip_ws();
      expect("=");
      skip_ws();
      a.value = parse_quoted();
      el.attrs.push_back(std::move(a));
    }
    // children until the closing tag
    for (;;) {
      skip_misc();
      if (eof()) fail("missing </" + el.name + ">");
      if (starts_with("</")) {
        expect("</");
        std::string closing = parse_name();
        if (closing != el.name)
          fail("mismatched closing tag </" + closing + "> for <" + el.name +
               ">");
        skip_ws();
        expect(">");
        el.src_end = pos_;
        return el;
      }
      if (peek() == '<') {
        el.children.push_back(parse_element());
      } else {
        fail("unexpected text content inside <" + el.name + ">");
      }
    }
  }
};

// ---------------------------------------------------------------------
// XES interpretation
// ---------------------------------------------------------------------

bool is_attribute_kind(const std::string& name) {
  return name == "string" || name == "int" || name == "float" ||
         name == "boolean" || name == "date";
}

AttributeValue parse_attribute_value(const XmlElement& el,
                                     const std::string& origin) {
  const std::string* value = el.attr("value");
  if (!value)
    throw FormatError(origin + ": <" + el.name + "> without value attribute",
                      el.line);
  if (el.name == "string") return AttributeValue(*value);
  if (el.name == "boolean") {
    if (*value == "true") return AttributeValue(true);
    if (*value == "false") return AttributeValue(false);
    throw FormatError(origin + ": bad boolean value '" + *value + "'",
                      el.line);
  }
  if (el.name == "int") {
    std::int64_t v = 0;
    auto r = std::from_chars(value->data(), value->data() + value->size(), v);
    if (r.ec != std::errc{} || r.ptr != value->data() + value->size())
      throw FormatError(origin + ": bad int value '" + *value + "'", el.line);
    return AttributeValue(v);
  }
  if (el.name == "float") {
    double v = 0;
    auto r = std::from_chars(value->data(), value->data() + value->size(), v);
    if (r.ec != std::errc{} || r.ptr != value->data() + value->size() ||
        !std::isfinite(v))
      throw FormatError(origin + ": bad float value '" + *value + "'",
                        el.line);
    return AttributeValue(v);
  }
  if (el.name == "date")
    return AttributeValue(parse_timestamp(*value, el.line));
  throw FormatError(origin + ": unknown attribute kind <" + el.name + ">",
                    el.line);
}

void add_attribute(
    const XmlElement& el, const std::string& src, const std::string& origin,
    AttrMap& attrs,
    std::unordered_map<std::string, std::vector<std::string>>& opaque,
    const char* scope) {
  const std::string* key = el.attr("key");
  if (!key)
    throw FormatError(origin + ": <" + el.name + "> without key attribute",
                      el.line);
  AttributeValue value = parse_attribute_value(el, origin);
  if (!attrs.insert(*key, std::move(value)))
    throw FormatError(origin + ": duplicate " + scope + " attribute '" + *key +
                          "'",
                      el.line);
  // Sub-attributes are kept verbatim and re-emitted inside their parent.
  for (const auto& child : el.children)
    opaque[*key].push_back(
        src.substr(child.src_begin, child.src_end - child.src_begin));
}

Event parse_event(const XmlElement& el, const std::string& src,
                  const std::string& origin) {
  Event event;
  for (const auto& child : el.children) {
    if (!is_attribute_kind(child.name))
      throw FormatError(origin + ": unknown XES element kind <" + child.name +
                            "> inside <event>",
                        child.line);
    add_attribute(child, src, origin, event.attributes, event.opaque_children,
                  "event");
  }
  return event;
}

Trace parse_trace(const XmlElement& el, const std::string& src,
                  const std::string& origin) {
  Trace trace;
  for (const auto& child : el.children) {
    if (child.name == "event") {
      trace.events.push_back(parse_event(child, src, origin));
    } else if (is_attribute_kind(child.name)) {
      add_attribute(child, src, origin, trace.trace_attributes,
                    trace.opaque_children, "trace");
    } else {
      throw FormatError(origin + ": unknown XES element kind <" + child.name +
                            "> inside <trace>",
                        child.line);
    }
  }
  return trace;
}

bool is_header_element(const std::string& name) {
  return name == "extension" || name == "global" || name == "classifier";
}

}  // namespace

EventLog parse_xes(const std::string& content, const std::string& origin) {
  XmlParser parser(content, origin);
  XmlElement root = parser.parse_document();
  if (root.name != "log")
    throw FormatError(origin + ": root element is <" + root.name +
                          ">, expected <log>",
                      root.line);

  EventLog log;
  for (const auto& a : root.attrs) log.xml_attrs.emplace_back(a.name, a.value);
  for (const auto& child : root.children) {
    if (child.name == "trace") {
      log.traces.push_back(parse_trace(child, content, origin));
    } else if (is_attribute_kind(child.name)) {
      add_attribute(child, content, origin, log.log_attributes,
                    log.opaque_children, "log");
    } else if (is_header_element(child.name)) {
      log.opaque_header.push_back(
          content.substr(child.src_begin, child.src_end - child.src_begin));
    } else {
      throw FormatError(origin + ": unknown XES element kind <" + child.name +
                            "> inside <log>",
                        child.line);
    }
  }
  return log;
}

EventLog read_xes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return parse_xes(buf.str(), path);
}

namespace {

void escape_into(std::string& out, const std::string& s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
}

void indent(std::string& out, int depth) {
  out.append(std::size_t(depth) * 2, ' ');
}

void render_attribute(
    std::string& out, int depth, const std::string& name,
    const AttributeValue& value,
    const std::unordered_map<std::string, std::vector<std::string>>& opaque) {
  indent(out, depth);
  out += '<';
  out += attr_kind_name(value.kind());
  out += " key=\"";
  escape_into(out, name);
  out += "\" value=\"";
  escape_into(out, value.to_display_string());
  out += '"';
  auto it = opaque.find(name);
  if (it == opaque.end() || it->second.empty()) {
    out += "/>\n";
    return;
  }
  out += ">\n";
  for (const auto& raw : it->second) {
    indent(out, depth + 1);
    out += raw;
    out += '\n';
  }
  indent(out, depth);
  out += "</";
  out += attr_kind_name(value.kind());
  out += ">\n";
}

}  // namespace

std::string render_xes(const EventLog& log) {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<log";
  for (const auto& [name, value] : log.xml_attrs) {
    out += ' ';
    out += name;
    out += "=\"";
    escape_into(out, value);
    out += '"';
  }
  out += ">\n";
  for (const auto& raw : log.opaque_header) {
    indent(out, 1);
    out += raw;
    out += '\n';
  }
  for (const auto& [name, value] : log.log_attributes)
    render_attribute(out, 1, name, value, log.opaque_children);
  for (const auto& trace : log.traces) {
    indent(out, 1);
    out += "<trace>\n";
    for (const auto& [name, value] : trace.trace_attributes)
      render_attribute(out, 2, name, value, trace.opaque_children);
    for (const auto& event : trace.events) {
      indent(out, 2);
      out += "<event>\n";
      for (const auto& [name, value] : event.attributes)
        render_attribute(out, 3, name, value, event.opaque_children);
      indent(out, 2);
      out += "</event>\n";
    }
    indent(out, 1);
    out += "</trace>\n";
  }
  out += "</log>\n";
  return out;
}

void write_xes(const EventLog& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << render_xes(log);
  if (!out) throw IoError("write failure on '" + path + "'");
}

}  // namespace semlog
