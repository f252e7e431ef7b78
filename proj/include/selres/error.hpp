#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace selres {

// Base for every error raised by the library. The CLI maps IoError to exit
// status 2 and everything else to 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text: taxonomy, lexicon, lemma table, corpus, etc.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Query for a class id or noun that the knowledge base does not contain.
class UnknownItemError : public Error {
 public:
  using Error::Error;
};

// A probability whose conditioning event was never observed.
class ZeroDenominatorError : public Error {
 public:
  using Error::Error;
};

// An association score requested for a class with no joint occurrence.
class UnsupportedClassError : public Error {
 public:
  using Error::Error;
};

// Bracketed corpus text that does not form well-nested constituents.
class BracketError : public Error {
 public:
  BracketError(std::size_t offset, const std::string& what)
      : Error("byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace selres
