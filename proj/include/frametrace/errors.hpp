#pragma once

#include <stdexcept>
#include <string>

namespace frametrace {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotFinite : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

// Raised when a positive operator fails the eigenvalue floor. For frame
// operators this means the analysis map is not an embedding.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

class NotAFrame : public NotInvertible {
 public:
  using NotInvertible::NotInvertible;
};

class NotAGroup : public Error {
 public:
  using Error::Error;
};

class UnknownGroupSpec : public Error {
 public:
  using Error::Error;
};

class GroupMismatch : public Error {
 public:
  using Error::Error;
};

class NotARepresentation : public Error {
 public:
  using Error::Error;
};

class NotInvariant : public Error {
 public:
  using Error::Error;
};

class InvariantViolated : public Error {
 public:
  using Error::Error;
};

class NotInRange : public Error {
 public:
  using Error::Error;
};

class ReferencePairNotAdmissible : public Error {
 public:
  using Error::Error;
};

class UnsupportedGroup : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

enum class IrrepFault { NotHomomorphism, NotIrreducible, NotInequivalent, NotComplete };

inline const char* to_string(IrrepFault f) {
  switch (f) {
    case IrrepFault::NotHomomorphism: return "NotHomomorphism";
    case IrrepFault::NotIrreducible: return "NotIrreducible";
    case IrrepFault::NotInequivalent: return "NotInequivalent";
    case IrrepFault::NotComplete: return "NotComplete";
  }
  return "?";
}

class IrrepError : public Error {
 public:
  IrrepError(IrrepFault fault, std::string label, const std::string& what)
      : Error(std::string(to_string(fault)) + " [" + label + "]: " + what),
        fault_(fault),
        label_(std::move(label)) {}

  IrrepFault fault() const noexcept { return fault_; }
  const std::string& label() const noexcept { return label_; }

 private:
  IrrepFault fault_;
  std::string label_;
};

}  // namespace frametrace
