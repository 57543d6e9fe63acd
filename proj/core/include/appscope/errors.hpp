#pragma once

#include <stdexcept>
#include <string>

namespace appscope {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Input bytes do not follow the expected file format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition (bad scheme, empty input...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value (scoring parameters, manifest content).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The reputation backend answered with something we cannot interpret.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Score undefined for a report the provider never scanned.
class UndefinedScoreError : public Error {
 public:
  using Error::Error;
};

}  // namespace appscope
