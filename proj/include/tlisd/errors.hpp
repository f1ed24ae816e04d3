#pragma once

#include <stdexcept>
#include <string>

namespace tlisd {

// Base class for all library errors. Subclasses map onto CLI exit codes:
// ParameterError -> 2, IoError -> 3, NumericalError -> 4.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg) {}
};

// Raised when a frame's log-chromaticity cloud is (near-)constant and no
// invariant direction exists, e.g. grayscale input.
class DegenerateChromaticityError : public NumericalError {
public:
    explicit DegenerateChromaticityError(const std::string& msg) : NumericalError(msg) {}
};

} // namespace tlisd
