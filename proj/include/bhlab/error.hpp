#pragma once

#include <stdexcept>
#include <string>

namespace bhlab {

// Error categories mirror the exit-code contract of the CLI and the C API.
enum class errc {
    invalid_argument,  // malformed sizes, grids that do not match, bad enum values
    config,            // unreadable or inconsistent run configuration
    precondition,      // a documented operation precondition was violated
    regime,            // a smallness certificate failed mid-run
    numeric,           // iteration diverged, non-finite values, domain exits
    io,                // file system failures
    internal           // should-not-happen states
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
    error(errc c, const std::string& msg) : std::runtime_error(msg), cat_(c) {}
    errc category() const { return cat_; }

private:
    errc cat_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

inline void require(bool ok, errc c, const std::string& msg) {
    if (!ok) fail(c, msg);
}

}  // namespace bhlab
