#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace atdist {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document or tree structure. `line` is 0 when unknown.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Invalid cost / threshold / weight configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Labels with no vector in the embedding table.
class MissingEmbeddingError : public Error {
 public:
  explicit MissingEmbeddingError(std::vector<std::string> labels)
      : Error(make_message(labels)), labels_(std::move(labels)) {}
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  static std::string make_message(const std::vector<std::string>& labels) {
    std::string msg = "missing embedding for label(s):";
    for (const auto& l : labels) msg += " \"" + l + "\"";
    return msg;
  }
  std::vector<std::string> labels_;
};

}  // namespace atdist
