#pragma once

#include <stdexcept>
#include <string>

namespace revbench {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file; carries file name and 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), file_(file), line_(line) {}
    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

class ReferentialError : public Error {
public:
    using Error::Error;
};

class ScaleError : public Error {
public:
    using Error::Error;
};

class UnknownLabelError : public Error {
public:
    using Error::Error;
};

class InsufficientPapersError : public Error {
public:
    using Error::Error;
};

class DegenerateInputError : public Error {
public:
    using Error::Error;
};

class EmptyInputError : public Error {
public:
    using Error::Error;
};

class UndefinedAlphaError : public Error {
public:
    using Error::Error;
};

class SupportMismatchError : public Error {
public:
    using Error::Error;
};

class TransportError : public Error {
public:
    using Error::Error;
};

class VerdictParseError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace revbench
