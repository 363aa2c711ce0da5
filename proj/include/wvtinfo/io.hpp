#pragma once

#include <filesystem>
#include <string>

#include "wvtinfo/tfgrid.hpp"
#include "wvtinfo/waveform.hpp"

namespace wvtinfo {

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

// Binary waveform: "WVF1", u32 count, f64 sample rate, then interleaved f64
// (re, im), all little-endian.
void write_waveform(const std::filesystem::path& path, const Waveform& w);
Waveform read_waveform(const std::filesystem::path& path);

// CSV with header t,re,im. Sample rate is inferred from the first two rows
// (a single-row file needs `sample_rate`).
void write_waveform_csv(const std::filesystem::path& path, const Waveform& w);
Waveform read_waveform_csv(const std::filesystem::path& path, double sample_rate = 0.0);

// Picks the binary or CSV reader by extension (.csv means CSV).
Waveform load_waveform(const std::filesystem::path& path);

// CSV with header freq_hz,value.
std::string spectral_density_csv(const SpectralDensity& s);
void write_spectral_density(const std::filesystem::path& path, const SpectralDensity& s);

// JSON sidecar `<stem>.json` plus row-major little-endian f64 payload
// `<stem>.bin`. `stem` is the path without extension.
void write_tfgrid(const std::filesystem::path& stem, const TFGrid& grid);
TFGrid read_tfgrid(const std::filesystem::path& stem);

// Writes text to a file, throwing IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace wvtinfo
