#ifndef PAIGE_ERRORS_HPP
#define PAIGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace paige {

/// Base class for everything this library throws on purpose.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad input: composite characteristic, non-monic polynomial, division by
/// zero, impossible embedding, malformed permutation, ...
class value_error : public error {
public:
    explicit value_error(const std::string& msg) : error(msg) {}
};

/// A desk-scale limit was exceeded (enumeration size, table size, search
/// budget). The operation is refused, never silently truncated.
class guardrail_error : public error {
public:
    explicit guardrail_error(const std::string& msg) : error(msg) {}
};

/// A cache file failed validation on load.
class cache_error : public error {
public:
    explicit cache_error(const std::string& msg) : error(msg) {}
};

/// An internal consistency check failed (e.g. a Cayley table came out
/// non-Latin). Signals a bug upstream, not bad user input.
class internal_error : public error {
public:
    explicit internal_error(const std::string& msg) : error(msg) {}
};

} // namespace paige

#endif
