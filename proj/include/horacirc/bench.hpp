#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "horacirc/circulant.hpp"
#include "horacirc/horadam.hpp"
#include "horacirc/json_io.hpp"
#include "horacirc/oracle.hpp"

namespace horacirc::bench {

/// One (method, n) cell. Times exclude the warm-up run, which doubles as the
/// validation run.
struct BenchRow {
    std::string method;
    std::size_t n = 0;
    std::size_t entry_bits_max = 0;
    std::uint64_t median_ns = 0;
    std::uint64_t min_ns = 0;
    std::size_t samples = 0;
    std::string value_digest;
    bool validated = false;
    bool timed_out = false;
    std::optional<std::string> note;
};

struct EntryBits {
    std::size_t n = 0;
    std::size_t max = 0;
    double mean = 0.0;
};

struct BenchRatio {
    std::size_t n = 0;
    std::string slow;
    std::string fast;
    /// median(slow) / median(fast)
    double ratio = 0.0;
};

struct BenchReport {
    std::string kind;  // "det" or "inverse"
    HoradamParams params;
    std::vector<BenchRow> rows;
    std::vector<EntryBits> entry_bits;
    std::vector<BenchRatio> ratios;

    const BenchRow* find(const std::string& method, std::size_t n) const;
};

struct BenchOptions {
    /// Empty selects the defaults: closed, bareiss, dft for det;
    /// gauss, structured, dft for inverse. Det also knows "fft".
    std::vector<std::string> methods;
    /// Per-cell budget; a cell stops taking samples once exceeded.
    double timeout_secs = 60.0;
};

/// Per-cell timeout: HORACIRC_TIMEOUT_SECS when set and positive, else `fallback`.
double timeout_from_env(double fallback = 60.0);

/// Floating relative tolerance used when validating the DFT/FFT paths.
inline constexpr double kFloatRelTol = 1e-6;

BenchReport bench_det(const HoradamParams& params, const std::vector<std::size_t>& sizes, unsigned repeat,
                      const BenchOptions& options = {});
BenchReport bench_inverse(const HoradamParams& params, const std::vector<std::size_t>& sizes, unsigned repeat,
                          const BenchOptions& options = {});

/// Determinant through an FFTW transform of the first row.
LogDet fft_log_det(const Circulant& c);

/// method,n,entry_bits_max,median_ns,min_ns,value_digest,validated
std::string to_csv(const BenchReport& report);
Json to_json(const BenchReport& report);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& s);

}  // namespace horacirc::bench
