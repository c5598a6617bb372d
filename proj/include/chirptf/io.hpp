#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chirptf/core.hpp"
#include "chirptf/eval.hpp"
#include "chirptf/ridge.hpp"
#include "chirptf/signals.hpp"

namespace chirptf {

namespace fs = std::filesystem;

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const fs::path& path, std::string_view bytes);

// TFR1: "TFR1", u32 n_time, u32 n_freq, f64 t0, dt, f0, df, then n_time*n_freq
// (re, im) f64 pairs, time-major, all little-endian.
std::string encode_tfr1(const TfrMatrix& tfr);
TfrMatrix decode_tfr1(std::string_view bytes);
void write_tfr1(const fs::path& path, const TfrMatrix& tfr);
TfrMatrix read_tfr1(const fs::path& path);

/// 8-bit binary PGM of the dB magnitude: time runs left to right and the
/// highest frequency row is at the top.  floor_db maps to 0, the peak to 255.
std::string encode_pgm(const TfrMatrix& tfr, double floor_db = -60.0);
void write_pgm(const fs::path& path, const TfrMatrix& tfr, double floor_db = -60.0);

struct SampledSignal {
  std::vector<cplx> samples;
  double t0 = 0.0;
  double dt = 0.0;  // 0 when fewer than two rows
};

// Signal CSV: header "t,re,im", one sample per row.
std::string encode_signal_csv(const ComplexSignal& signal);
SampledSignal parse_signal_csv(std::string_view text);
SampledSignal read_signal_csv(const fs::path& path);

/// "t,component_id,f_inst_hz,f_prime_hz_per_s" rows from chirp-annotated curves.
std::string encode_ifest_csv(const std::vector<RidgeCurve>& curves, const SampleGrid& grid);

/// "snr,method,mse,trials" rows.
std::string encode_mse_csv(const MseReport& report);

/// Parsed signal description file.  Grid entries are optional so command-line
/// flags can supply or override them.
struct SpecFile {
  SignalSpec spec;
  std::optional<double> dt, df, t0, f0, xi;
  std::optional<std::size_t> samples, freq_bins;
};

/// Number token: [sign] value ['pi'] ['/' value ['pi']], e.g. 1/256, -20pi, 0.2pi, pi/2.
double parse_number(std::string_view token);
SpecFile parse_spec(std::string_view text);
SpecFile read_spec(const fs::path& path);

std::string read_file(const fs::path& path);

}  // namespace chirptf
