#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace zfstar {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax error with source position and the token classes that would have
// been accepted at that point.
struct parse_error : error {
  parse_error(const std::string& what, int line, int column,
              std::vector<std::string> expected = {})
      : error(format(what, line, column, expected)),
        line(line),
        column(column),
        expected(std::move(expected)) {}

  int line;
  int column;
  std::vector<std::string> expected;

 private:
  static std::string format(const std::string& what, int line, int column,
                            const std::vector<std::string>& expected) {
    std::string msg =
        std::to_string(line) + ":" + std::to_string(column) + ": " + what;
    if (!expected.empty()) {
      msg += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) msg += expected.size() == 2 ? " or " : ", ";
        msg += expected[i];
      }
      msg += ")";
    }
    return msg;
  }
};

// Model file / structure invariant failure; carries one message per violation.
struct model_error : error {
  model_error(const std::string& what, std::vector<std::string> violations = {})
      : error(format(what, violations)), violations(std::move(violations)) {}

  std::vector<std::string> violations;

 private:
  static std::string format(const std::string& what,
                            const std::vector<std::string>& violations) {
    std::string msg = what;
    for (const auto& v : violations) msg += "\n  - " + v;
    return msg;
  }
};

struct eval_error : error {
  using error::error;
};

}  // namespace zfstar
