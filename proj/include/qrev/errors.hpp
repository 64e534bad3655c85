#pragma once

#include <stdexcept>
#include <string>

namespace qrev {

// Base of every error thrown by the library. Callers that only need to
// distinguish "bad input" from "bug" can catch this one type.
class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
    using Error::Error;
};

class NonHermitian : public Error {
 public:
    using Error::Error;
};

class NoConvergence : public Error {
 public:
    using Error::Error;
};

class NotPSD : public Error {
 public:
    using Error::Error;
};

class InvalidState : public Error {
 public:
    using Error::Error;
};

class InvalidCode : public Error {
 public:
    using Error::Error;
};

class NotTracePreserving : public Error {
 public:
    NotTracePreserving(const std::string &what, double deviation)
        : Error(what), deviation_(deviation) {}
    double deviation() const { return deviation_; }

 private:
    double deviation_;
};

class NotCompletelyPositive : public Error {
 public:
    using Error::Error;
};

class ParseError : public Error {
 public:
    using Error::Error;
};

class InfiniteEntropyArithmetic : public Error {
 public:
    using Error::Error;
};

}  // namespace qrev
