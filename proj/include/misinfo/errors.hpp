#ifndef MISINFO_ERRORS_HPP
#define MISINFO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace misinfo {

// Invalid input: bad file, violated invariant, bad config. Maps to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative procedure hit its iteration cap. Maps to exit code 3.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace misinfo

#endif
