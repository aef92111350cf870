#pragma once

#include <stdexcept>
#include <string>

namespace scaletrim {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input holds only one class (all-positive or all-negative labels).
class DegenerateLabels : public Error {
public:
    explicit DegenerateLabels(const std::string& msg) : Error(msg) {}
};

// Bad values fed to a computation: non-finite score, label outside {0,1},
// mismatched lengths, unknown item, negative error variance, bad generator spec.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// File-level failure while reading a dataset or loadings file. Messages carry
// 1-based row/column coordinates where applicable.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
    ParseError(const std::string& msg, std::size_t row, std::size_t col)
        : Error(msg + " (row " + std::to_string(row) + ", column " + std::to_string(col) + ")") {}
};

// Label column contains a value other than 0 or 1.
class NonBinaryLabel : public ParseError {
public:
    NonBinaryLabel(const std::string& msg, std::size_t row, std::size_t col)
        : ParseError(msg, row, col) {}
};

} // namespace scaletrim
