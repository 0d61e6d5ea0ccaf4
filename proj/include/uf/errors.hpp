#pragma once

#include <stdexcept>
#include <string>

namespace uf {

// Every failure mode surfaces as one of these; the driver turns them into
// per-declaration report records and never lets them escape the process.
struct Error : std::runtime_error {
  std::string kind;
  Error(std::string k, const std::string& msg) : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

struct TypeError : Error {
  using Error::Error;
};

inline TypeError err_not_a_type(const std::string& at, const std::string& cause) {
  return TypeError("NotAType", at + (cause.empty() ? "" : " (" + cause + ")"));
}
inline TypeError err_ill_formed(int index, const std::string& cause) {
  return TypeError("IllFormedType", "context entry " + std::to_string(index) + ": " + cause);
}
inline TypeError err_dup_var(const std::string& name) { return TypeError("DuplicateVariable", name); }
inline TypeError err_cannot_infer(const std::string& at) { return TypeError("CannotInfer", at); }
inline TypeError err_mismatch(const std::string& expected, const std::string& got, const std::string& at) {
  return TypeError("TypeMismatch", "expected " + expected + ", got " + got + ", at " + at);
}
inline TypeError err_missing_flag(const std::string& what) { return TypeError("MissingFlag", what); }
inline TypeError err_unbound(const std::string& name) { return TypeError("UnboundName", name); }

struct FuelExhausted : Error {
  long budget;
  explicit FuelExhausted(long b) : Error("FuelExhausted", "normalization budget " + std::to_string(b) + " exceeded"), budget(b) {}
};

struct BudgetExceeded : Error {
  std::string op;
  long needed, limit;
  BudgetExceeded(std::string op_, long needed_, long limit_)
      : Error("BudgetExceeded", op_ + " needs " + std::to_string(needed_) + " > limit " + std::to_string(limit_)),
        op(std::move(op_)), needed(needed_), limit(limit_) {}
};

struct NotCommuting : Error {
  explicit NotCommuting(const std::string& msg) : Error("NotCommuting", msg) {}
};

struct InputNotTrivialFibration : Error {
  explicit InputNotTrivialFibration(const std::string& msg) : Error("InputNotTrivialFibration", msg) {}
};

struct OracleInconclusive : Error {
  explicit OracleInconclusive(const std::string& msg) : Error("OracleInconclusive", msg) {}
};

struct BadIndex : Error {
  explicit BadIndex(const std::string& msg) : Error("BadIndex", msg) {}
};

struct Unsupported : Error {
  explicit Unsupported(const std::string& msg) : Error("Unsupported", msg) {}
};

struct ParseError : Error {
  int line, col;
  ParseError(int line_, int col_, const std::string& msg)
      : Error("ParseError", std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg), line(line_), col(col_) {}
};

}  // namespace uf
