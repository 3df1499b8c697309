#ifndef SOFIC_ERRORS_HPP
#define SOFIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sofic {

// Malformed input text (graph or matrix files, CLI payloads).
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed value outside an operation's domain (reducible graph,
// dimension mismatch, bound exceeded, ...).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sofic

#endif
