#ifndef SEMLOG_ERRORS_HPP
#define SEMLOG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace semlog {

/// Base class for all library errors. The CLI maps these to exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Unreadable or unwritable file.
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Malformed input data. Carries a line number when one is known (0 = unknown).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& msg, std::size_t line = 0)
      : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A caller violated an operation's precondition.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

/// An original attribute already uses the reserved augmentation prefix.
class CollisionError : public Error {
 public:
  explicit CollisionError(const std::string& msg) : Error(msg) {}
};

/// An analysis was asked for on a log without semantic attributes.
class MissingAugmentation : public Error {
 public:
  explicit MissingAugmentation(const std::string& msg) : Error(msg) {}
};

/// An object filter matched nothing.
class EmptySelection : public Error {
 public:
  explicit EmptySelection(const std::string& msg) : Error(msg) {}
};

}  // namespace semlog

#endif
