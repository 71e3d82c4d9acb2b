#pragma once

#include <stdexcept>
#include <string>

namespace netex {

// Error categories used across the library. The CLI prints the category
// name as a machine-parsable prefix, so names are stable identifiers.
enum class errc {
    out_of_range_vertex,
    empty_edge,
    not_k_partite,
    length_mismatch,
    bad_params,
    infeasible,
    unbounded,
    iteration_limit,
    too_large,
    shape_mismatch,
    alphabet_too_large,
    zero_weight,
    spec_mismatch,
    infeasible_weights,
    zero_normalizer,
    empty_class,
    missing_chi_star,
    parse_error,
    io_error,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace netex
