#pragma once

#include <stdexcept>
#include <string>

namespace mfl {

/// Error categories for every failure the toolkit reports deliberately.
enum class Errc {
    not_prime,
    bad_degree,
    field_too_large,
    division_by_zero,
    mixed_fields,
    not_a_unit,
    not_latin,
    no_identity,
    not_a_subloop,
    not_normal,
    not_moufang,
    not_associative,
    center_mismatch,
    unknown_name,
    not_p_loop,
    not_nilpotent,
    mismatch,
    too_large,
    bad_input,
};

const char* to_string(Errc c) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace mfl
