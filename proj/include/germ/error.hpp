#ifndef GERM_ERROR_HPP
#define GERM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace germ {

// All library failures carry a machine-readable code ("input.not-a-germ",
// "puiseux.truncation", "tower.degree-cap", ...) next to the human message.
class GermError : public std::runtime_error {
public:
    GermError(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw GermError(code, msg);
}

} // namespace germ

#endif
