#pragma once

#include <stdexcept>
#include <string>

namespace simplify {

// Base class for all library errors. The category decides the CLI exit code.
class Error : public std::runtime_error {
 public:
  enum class Category { kConfig = 2, kData = 3, kNumeric = 4 };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const { return category_; }
  int exit_code() const { return static_cast<int>(category_); }

 private:
  Category category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(Category::kConfig, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(Category::kData, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(Category::kNumeric, what) {}
};

}  // namespace simplify
