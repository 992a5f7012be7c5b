#pragma once

#include <stdexcept>
#include <string>

namespace swf {

// 1-based position inside a DSL document.
struct SourcePos {
    int line = 1;
    int column = 1;
    bool operator==(const SourcePos&) const = default;
};

inline std::string to_string(const SourcePos& p) {
    return std::to_string(p.line) + ":" + std::to_string(p.column);
}

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax or semantic error while parsing a workflow document or constraint.
class ParseError : public Error {
public:
    ParseError(SourcePos pos, const std::string& msg)
        : Error(to_string(pos) + ": " + msg), pos_(pos) {}
    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

// Failure while materializing a dataset from an external source.
class LoadError : public Error {
public:
    using Error::Error;
};

// Failure while executing an operator (bad cardinality, broken partition, ...).
class ExecError : public Error {
public:
    using Error::Error;
};

}  // namespace swf
