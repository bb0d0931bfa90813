#pragma once

#include <stdexcept>
#include <string>

namespace iolb {

// Exit-code classes used by the command line front end.
enum class ErrorKind { usage = 1, input = 2, cap = 3, check = 4, internal = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace iolb
