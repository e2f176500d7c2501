#pragma once

#include <cstdint>

namespace wsnsim {

/// log2(M) for a power-of-two order.
int bits_per_symbol(int order);

// Running error counts for one parameter point. Merging is plain field-wise
// addition, so chunked tallies reduce to the same totals in any order.
struct ErrorTally {
    std::uint64_t trials = 0;
    std::uint64_t symbol_errors = 0;
    std::uint64_t bit_errors = 0;
    int bits_per_symbol = 0;

    void add(int symbol_err, int bit_errs)
    {
        trials += 1;
        symbol_errors += static_cast<std::uint64_t>(symbol_err);
        bit_errors += static_cast<std::uint64_t>(bit_errs);
    }
};

struct BitErrorCount {
    int symbol_error; // 0 or 1
    int bit_errors;   // Hamming distance of the natural binary labels
};

/// Compare decided vs true symbol (both 1-based) under natural binary
/// labeling of symbol-1. Throws std::out_of_range for symbols outside [1..M].
BitErrorCount count_errors(int true_symbol, int decided_symbol, int order);

struct ConfidenceInterval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for a binomial proportion; behaves sensibly at the
/// tiny error counts that show up near BER 1e-5 (zero errors give low = 0).
/// Throws std::invalid_argument on trials = 0, errors > trials, or
/// confidence outside (0, 1).
ConfidenceInterval wilson_ci(std::uint64_t errors, std::uint64_t trials,
                             double confidence);

/// Field-wise sum. Throws std::invalid_argument when bits_per_symbol differ.
ErrorTally merge_tallies(const ErrorTally& a, const ErrorTally& b);

// Aggregated estimate for one parameter point; the CI is the 95% Wilson
// interval on the BER.
struct BerPoint {
    double ser = 0.0;
    double ber = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t symbol_errors = 0;
    std::uint64_t bit_errors = 0;
};

BerPoint tally_to_point(const ErrorTally& tally, double confidence = 0.95);

} // namespace wsnsim
