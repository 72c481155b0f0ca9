#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace itl {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
  SyntaxError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

class UndeclaredVariable : public Error {
public:
  explicit UndeclaredVariable(const std::string& name)
      : Error("undeclared variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

private:
  std::string name_;
};

/// Input outside the fragment an operation accepts (non-introspective,
/// non-state, non-future, quantified, ...).
class FragmentError : public Error {
public:
  using Error::Error;
};

class NotSeparated : public FragmentError {
public:
  explicit NotSeparated(const std::string& offending)
      : FragmentError("not separated: " + offending +
                      " (run a separation pass first)"),
        offending_(offending) {}
  const std::string& offending() const { return offending_; }

private:
  std::string offending_;
};

class CaptureError : public Error {
public:
  using Error::Error;
};

class VocabularyMismatch : public Error {
public:
  VocabularyMismatch() : Error("automata over different vocabularies") {}
  using Error::Error;
};

/// A configurable size guard (automaton states, DNF atoms) was exceeded.
class GuardExceeded : public Error {
public:
  using Error::Error;
};

/// An internal self-check failed; always a bug, never a user error.
class VerificationFailure : public Error {
public:
  using Error::Error;
};

class ShapeError : public Error {
public:
  using Error::Error;
};

class FormatError : public Error {
public:
  using Error::Error;
};

}  // namespace itl
