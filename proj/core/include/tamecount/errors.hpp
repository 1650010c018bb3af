#pragma once

#include <stdexcept>
#include <string>

namespace tamecount {

// Bad user input. `where` locates the offending item (a JSON path, a place
// index, an argument name) when one is known.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg, std::string where = {})
        : std::runtime_error(where.empty() ? msg : where + ": " + msg), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

// A valid request this library does not handle (e.g. the genus-0 Higgs path
// with cuspidal places left after base change).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An enumeration would exceed its configured size bound.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A mathematical invariant failed at runtime. Always a bug or an inconsistent
// convention, never a user mistake.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace tamecount
