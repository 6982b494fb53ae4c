#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>

namespace sgflow {

/// Failure categories. Each maps to a distinct CLI exit code.
enum class ErrorKind {
    precondition,        // input violates a documented precondition
    resource_cap,        // a search hit its node / enumeration limit
    invariant_violation, // an algorithm reached a state its theorem rules out
    parse,               // malformed file content
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(ErrorKind::precondition, what) {}
};

struct ResourceCapError : Error {
    explicit ResourceCapError(const std::string& what) : Error(ErrorKind::resource_cap, what) {}
};

struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& what) : Error(ErrorKind::invariant_violation, what) {}
};

struct ParseError : Error {
    ParseError(int line, const std::string& what)
        : Error(ErrorKind::parse, line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Outcome of an exhaustive search. `none` is an exactness claim; `cap_exceeded` means undecided.
enum class SearchStatus { found, none, cap_exceeded };

inline const char* to_string(SearchStatus s) {
    switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::cap_exceeded: return "cap-exceeded";
    }
    return "?";
}

template <class T>
struct Search {
    SearchStatus status = SearchStatus::none;
    std::optional<T> value;
    std::uint64_t nodes = 0;

    bool found() const { return status == SearchStatus::found; }
    bool none() const { return status == SearchStatus::none; }
    bool capped() const { return status == SearchStatus::cap_exceeded; }
    const T& operator*() const { return *value; }
    const T* operator->() const { return &*value; }

    /// Value, or ResourceCapError when undecided; nullopt for a definite none.
    const std::optional<T>& decided(const char* what) const {
        if (capped()) throw ResourceCapError(std::string(what) + ": search cap exceeded");
        return value;
    }
};

/// Search caps default to `fallback` unless SG_RESOURCE_CAP holds a positive integer.
inline std::uint64_t resource_cap(std::uint64_t fallback) {
    if (const char* env = std::getenv("SG_RESOURCE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return fallback;
}

} // namespace sgflow
