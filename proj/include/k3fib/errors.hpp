#pragma once

#include <stdexcept>
#include <string>

namespace k3fib {

// Error conditions surfaced by the library. The CLI maps these onto its
// exit-code contract: invalid input (1), constraint violation (2),
// internal inconsistency (3).
enum class errc {
    invalid_argument,
    unsupported_n,
    invalid_span,
    invalid_discriminant,
    degree_too_large,
    out_of_table,
    not_allowed_partition,
    degenerate_lattice,
    not_unimodular,
    domain_mismatch,
    non_zero_defect,
    not_admissible,
    not_smooth,
    internal_inconsistency,
    negative_rank,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_argument: return "InvalidArgument";
        case errc::unsupported_n: return "UnsupportedN";
        case errc::invalid_span: return "InvalidSpan";
        case errc::invalid_discriminant: return "InvalidDiscriminant";
        case errc::degree_too_large: return "DegreeTooLarge";
        case errc::out_of_table: return "OutOfTable";
        case errc::not_allowed_partition: return "NotAllowedPartition";
        case errc::degenerate_lattice: return "DegenerateLattice";
        case errc::not_unimodular: return "NotUnimodular";
        case errc::domain_mismatch: return "DomainMismatch";
        case errc::non_zero_defect: return "NonZeroDefect";
        case errc::not_admissible: return "NotAdmissible";
        case errc::not_smooth: return "NotSmooth";
        case errc::internal_inconsistency: return "InternalInconsistency";
        case errc::negative_rank: return "NegativeRank";
    }
    return "Unknown";
}

// Exit-code bucket for the CLI contract.
inline int exit_code_for(errc c) {
    switch (c) {
        case errc::invalid_argument:
        case errc::unsupported_n:
        case errc::invalid_span:
        case errc::invalid_discriminant:
        case errc::degree_too_large:
            return 1;
        case errc::out_of_table:
        case errc::not_allowed_partition:
        case errc::degenerate_lattice:
        case errc::not_unimodular:
        case errc::domain_mismatch:
        case errc::non_zero_defect:
        case errc::not_admissible:
        case errc::not_smooth:
            return 2;
        case errc::internal_inconsistency:
        case errc::negative_rank:
            return 3;
    }
    return 3;
}

}  // namespace k3fib
