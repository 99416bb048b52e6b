#pragma once

#include <stdexcept>
#include <string>

namespace sdd {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A point lies outside the domain or tessellation that an operation requires.
class OutOfDomainError : public Error { public: using Error::Error; };

// A function evaluation produced a non-finite or non-positive value.
class EvaluationError : public Error { public: using Error::Error; };

// A grid cannot be partitioned into the requested subdomains.
class LayoutError : public Error { public: using Error::Error; };

// Mesh inversion failed: uncovered target or degenerate forward map.
class InversionError : public Error { public: using Error::Error; };

// A physical mesh cell is folded or degenerate.
class TanglingError : public Error { public: using Error::Error; };

// A numerical scheme left its stability/sanity envelope.
class NumericalError : public Error { public: using Error::Error; };

// Invalid run configuration.
class ValidationError : public Error { public: using Error::Error; };

}  // namespace sdd
