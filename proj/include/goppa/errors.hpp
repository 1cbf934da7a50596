#pragma once

#include <stdexcept>
#include <string>

namespace goppa {

/// Everything that can go wrong, one code per failure mode.  The CLI maps
/// these onto exit codes; library code throws `error` with the right code.
enum class errc {
    not_prime,
    division_by_zero,
    parse_error,
    dimension_mismatch,
    degenerate,
    too_few_points,
    zero_row_in_dual,
    no_transport,
    transport_not_unique,
    non_reduced_intersection,
    non_rational_excess,
    degenerate_after_retries,
    coincident_gale_points,
    pencil_dim_wrong,
    negative_dual_degree,
    w_not_complementary,
    certificate_not_found,
    cubic_not_unique,
    partial_torsion,
    no_solution,
    retry_budget_exhausted,
    field_too_small,
    line_on_curve,
    field_not_finite,
    not_unique,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_prime: return "NotPrime";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::parse_error: return "ParseError";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::degenerate: return "Degenerate";
        case errc::too_few_points: return "TooFewPoints";
        case errc::zero_row_in_dual: return "ZeroRowInDual";
        case errc::no_transport: return "NoTransport";
        case errc::transport_not_unique: return "TransportNotUnique";
        case errc::non_reduced_intersection: return "NonReducedIntersection";
        case errc::non_rational_excess: return "NonRationalExcess";
        case errc::degenerate_after_retries: return "DegenerateAfterRetries";
        case errc::coincident_gale_points: return "CoincidentGalePoints";
        case errc::pencil_dim_wrong: return "PencilDimWrong";
        case errc::negative_dual_degree: return "NegativeDualDegree";
        case errc::w_not_complementary: return "WNotComplementary";
        case errc::certificate_not_found: return "CertificateNotFound";
        case errc::cubic_not_unique: return "CubicNotUnique";
        case errc::partial_torsion: return "PartialTorsion";
        case errc::no_solution: return "NoSolution";
        case errc::retry_budget_exhausted: return "RetryBudgetExhausted";
        case errc::field_too_small: return "FieldTooSmall";
        case errc::line_on_curve: return "LineOnCurve";
        case errc::field_not_finite: return "FieldNotFinite";
        case errc::not_unique: return "NotUnique";
    }
    return "Unknown";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what, long long payload = 0)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what),
          code_(code),
          payload_(payload) {}

    errc code() const { return code_; }
    /// Extra integer attached to some failures (e.g. PartialTorsion carries
    /// the number of rational square roots actually found).
    long long payload() const { return payload_; }

  private:
    errc code_;
    long long payload_;
};

[[noreturn]] inline void fail(errc code, const std::string& what, long long payload = 0) {
    throw error(code, what, payload);
}

}  // namespace goppa
