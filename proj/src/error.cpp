#include "netex/error.hpp"

namespace netex {

const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::out_of_range_vertex: return "OutOfRangeVertex";
        case errc::empty_edge: return "EmptyEdge";
        case errc::not_k_partite: return "NotKPartite";
        case errc::length_mismatch: return "LengthMismatch";
        case errc::bad_params: return "BadParams";
        case errc::infeasible: return "Infeasible";
        case errc::unbounded: return "Unbounded";
        case errc::iteration_limit: return "IterationLimit";
        case errc::too_large: return "TooLarge";
        case errc::shape_mismatch: return "ShapeMismatch";
        case errc::alphabet_too_large: return "AlphabetTooLarge";
        case errc::zero_weight: return "ZeroWeight";
        case errc::spec_mismatch: return "SpecMismatch";
        case errc::infeasible_weights: return "InfeasibleWeights";
        case errc::zero_normalizer: return "ZeroNormalizer";
        case errc::empty_class: return "EmptyClass";
        case errc::missing_chi_star: return "MissingChiStar";
        case errc::parse_error: return "ParseError";
        case errc::io_error: return "IoError";
    }
    return "UnknownError";
}

}  // namespace netex
