#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hmknf/kb.hpp"

namespace hmknf {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error with the position of the offending token and what the parser
/// would have accepted there.
class ParseError : public Error {
public:
    ParseError(SourcePos pos, std::string found, std::vector<std::string> expected,
               std::string detail = {});

    SourcePos pos() const { return pos_; }
    const std::string& found() const { return found_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    SourcePos pos_;
    std::string found_;
    std::vector<std::string> expected_;
};

struct Diagnostic;

/// Raised by parse_program when the text is syntactically valid but violates
/// a knowledge-base invariant.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

class CompileError : public Error {
public:
    using Error::Error;
};

class GroundingError : public Error {
public:
    using Error::Error;
};

class QueryError : public Error {
public:
    using Error::Error;
};

}  // namespace hmknf
