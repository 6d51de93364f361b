#pragma once

#include <stdexcept>
#include <string>

namespace bc {

enum class errc { bad_input, cap_exceeded, invalid };

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

inline error bad_input(const std::string& s) { return {errc::bad_input, s}; }
inline error cap_exceeded(const std::string& s) { return {errc::cap_exceeded, s}; }
inline error invalid(const std::string& s) { return {errc::invalid, s}; }

}  // namespace bc
