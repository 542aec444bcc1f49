#pragma once

#include <stdexcept>
#include <string>

namespace klq {

/// Bad user input: malformed words, unsupported type/form combinations,
/// scenario syntax errors. The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A configured resource guard (group order, interval size, variable count)
/// was exceeded. The CLI maps these to exit code 3.
class GuardError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Corrupt or mismatched KL cache file.
class CacheError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace klq
