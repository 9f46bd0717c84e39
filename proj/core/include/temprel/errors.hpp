#pragma once

#include <stdexcept>
#include <string>

namespace temprel {

/// Malformed input file; message carries the location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally valid input violating a documented invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closure-derived singleton label contradicts an existing edge label.
class ConflictError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyTrainingSet : public std::runtime_error {
 public:
  EmptyTrainingSet() : std::runtime_error("training set is empty") {}
};

class InsufficientDocuments : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NodeMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LengthMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChecksumMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownLabel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace temprel
