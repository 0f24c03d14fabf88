#pragma once

#include <stdexcept>
#include <string>

namespace bdq {

// Every failure raised by the library carries a short machine-readable code
// which the command line front end copies into its {"error": code} output.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

inline Error alphabet_mismatch(const std::string& where) {
  return Error("alphabet_mismatch", "operands use different alphabets in " + where);
}

inline Error unknown_symbol(const std::string& name) {
  return Error("unknown_symbol", "symbol '" + name + "' is not in the alphabet");
}

}  // namespace bdq
