#pragma once

#include <stdexcept>
#include <string>

namespace qsl2 {

// Every recoverable failure carries a stable machine-readable code so the
// CLI can map it to a JSON "error" field and exit code 2. The message is
// free-form human text.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

inline Error err(const char* code, const std::string& msg) {
  return Error(code, msg);
}

// Parse failures additionally carry the byte offset of the offending token.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error("SyntaxError", msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

}  // namespace qsl2
