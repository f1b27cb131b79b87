#ifndef SEMLOG_XES_HPP
#define SEMLOG_XES_HPP

#include <string>

#include "semlog/log.hpp"

namespace semlog {

/// Reads an XES XML file. Recognized attribute kinds are string, int,
/// float, boolean, and date; <extension>, <global>, and <classifier>
/// header elements are preserved verbatim, as are nested sub-attributes.
/// Throws IoError / FormatError (with line context).
EventLog read_xes(const std::string& path);

/// Parses XES from an in-memory buffer. `origin` names the source in
/// error messages.
EventLog parse_xes(const std::string& content, const std::string& origin);

/// Serializes the log as XES. Output is canonical: two-space indent,
/// attribute order as stored, timestamps in ISO-8601 with offset.
/// Writing then re-reading yields a structurally equal log, and a second
/// write is byte-identical.
void write_xes(const EventLog& log, const std::string& path);

std::string render_xes(const EventLog& log);

}  // namespace semlog

#endif
