#pragma once

#include <stdexcept>
#include <string>

namespace retlc {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by the formula / CCS / file parsers; carries a 1-based position.
struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& msg, int line_, int column_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(column_) + ")"),
          line(line_), column(column_) {}
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct XNotSupported : ParseError {
    XNotSupported(int line, int column)
        : ParseError("next-state operator X is not part of this logic", line, column) {}
};

struct UnguardedChoice : ParseError {
    UnguardedChoice(int line, int column)
        : ParseError("choice operands must be action-prefixed", line, column) {}
};

struct UndefinedIdentifier : Error {
    std::string name;
    explicit UndefinedIdentifier(const std::string& ident)
        : Error("agent identifier '" + ident + "' has no defining equation"), name(ident) {}
};

struct StateSpaceExceeded : Error {
    std::size_t limit;
    explicit StateSpaceExceeded(std::size_t max_states)
        : Error("state space exceeds " + std::to_string(max_states) + " states"), limit(max_states) {}
};

struct NotEnabled : Error {
    explicit NotEnabled(const std::string& what_) : Error("step not enabled: " + what_) {}
};

struct NotStructuralConflictNet : Error {
    explicit NotStructuralConflictNet(const std::string& what_)
        : Error("not a structural conflict net: " + what_) {}
};

struct TaskSetMismatch : Error {
    explicit TaskSetMismatch(const std::string& what_) : Error("task set mismatch: " + what_) {}
};

} // namespace retlc
