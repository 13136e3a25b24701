#ifndef SCENEFST_ERRORS_H_
#define SCENEFST_ERRORS_H_

#include <stdexcept>
#include <string>

namespace scenefst {

// Malformed or inconsistent input data (scene files, label sets, segments).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Incompatible machine alphabets or invalid decoder configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A state budget or enumeration guard was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The composed lattice has no accepting path.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace scenefst

#endif  // SCENEFST_ERRORS_H_
