#include "hmknf/error.hpp"

#include <sstream>

#include "hmknf/diagnostics.hpp"

namespace hmknf {

namespace {

std::string parse_message(SourcePos pos, const std::string& found,
                          const std::vector<std::string>& expected, const std::string& detail) {
    std::ostringstream os;
    os << pos.line << ':' << pos.column << ": ";
    if (!detail.empty()) {
        os << detail;
    } else {
        os << "unexpected " << found;
    }
    if (!expected.empty()) {
        os << "; expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) os << (i + 1 == expected.size() ? " or " : ", ");
            os << expected[i];
        }
    }
    return os.str();
}

std::string validation_message(const std::vector<Diagnostic>& ds) {
    std::string out;
    for (const auto& d : ds) {
        if (d.severity != Severity::Error) continue;
        if (!out.empty()) out += '\n';
        out += format(d);
    }
    return out;
}

}  // namespace

ParseError::ParseError(SourcePos pos, std::string found, std::vector<std::string> expected,
                       std::string detail)
    : Error(parse_message(pos, found, expected, detail)),
      pos_(pos),
      found_(std::move(found)),
      expected_(std::move(expected)) {}

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : Error(validation_message(diagnostics)), diagnostics_(std::move(diagnostics)) {}

}  // namespace hmknf
