#pragma once

#include <stdexcept>
#include <string>

namespace trisec {

// One exception type for the whole library; the kind makes error paths
// assertable in tests without string matching.
class Error : public std::runtime_error {
  public:
    enum class Kind {
        Dimension,        // non-square matrix, wrong tuple length, ...
        UnknownLabel,
        DuplicatePoint,
        NoCircuit,        // subset affinely independent
        AmbiguousCircuit, // subset contains two distinct circuits
        DegenerateCell,
        Precondition,
        CapExceeded,
        Inconsistency,
        Unsupported,
        Parse,
        Io,
    };

    Error(Kind k, std::string msg) : std::runtime_error(std::move(msg)), kind(k) {}

    Kind kind;
};

// Parse failures carry a position so the CLI can report line/column.
class ParseError : public Error {
  public:
    ParseError(std::string msg, int line = 0, int column = 0)
        : Error(Kind::Parse, std::move(msg)), line(line), column(column) {}

    int line;   // 1-based, 0 = unknown
    int column; // 1-based, 0 = unknown
};

} // namespace trisec
