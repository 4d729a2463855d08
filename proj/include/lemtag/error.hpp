#pragma once

#include <stdexcept>
#include <string>

namespace lemtag {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad flags, bad option combinations, impossible training setups.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed input data (CoNLL-U, rule strings, encodings, alignment).
class DataError : public Error {
public:
  using Error::Error;
};

class Utf8Error : public DataError {
public:
  using DataError::DataError;
};

class ParseError : public DataError {
public:
  ParseError(const std::string& what, std::size_t line)
      : DataError(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Gold/predicted corpora that do not line up token for token.
class AlignmentError : public DataError {
public:
  using DataError::DataError;
};

/// Strict-mode rule application that cannot consume the form.
class ApplyError : public DataError {
public:
  using DataError::DataError;
};

/// Model files that cannot be used: unreadable, wrong task, wrong channel.
class ModelError : public Error {
public:
  using Error::Error;
};

/// Model files that cannot even be read: truncated, garbled, empty.
class ModelFormatError : public ModelError {
public:
  using ModelError::ModelError;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace lemtag
