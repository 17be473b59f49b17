#ifndef CNC_ERRORS_HPP
#define CNC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cnc {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Two operands belong to different field contexts.
class FieldMismatchError : public Error {
   public:
    using Error::Error;
};

// Multiplicative inverse of zero requested.
class DivisionByZeroError : public Error {
   public:
    using Error::Error;
};

// Incompatible matrix/vector/sequence dimensions.
class DimensionError : public Error {
   public:
    using Error::Error;
};

// Malformed file or textual form (topology, trace, plan, polynomial, ...).
class ParseError : public Error {
   public:
    using Error::Error;
};

// The pilot linear system had no nontrivial solution; for a genuine
// unit-delay coding network this signals N < |E| or corrupted traces.
class InitializationError : public Error {
   public:
    using Error::Error;
};

// Transfer matrix is not of full column rank; the requested rates cannot
// be decoded and must be reduced.
class UndecodableError : public Error {
   public:
    using Error::Error;
};

// A sequence was read past the last recorded symbol.
class NeedsMoreSymbolsError : public Error {
   public:
    using Error::Error;
};

// Configured size guard exceeded (matrix dimensions, entry degrees,
// capacity enumeration width).
class LimitError : public Error {
   public:
    using Error::Error;
};

}  // namespace cnc

#endif
