#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "wvtinfo/rng.hpp"
#include "wvtinfo/tfgrid.hpp"
#include "wvtinfo/waveform.hpp"

namespace wvtinfo {

enum class ModKind { OOK, BPSK, QPSK, QAM64, MFSK };

std::string to_string(ModKind kind);
ModKind parse_mod_kind(const std::string& name);

struct ModulationSpec {
    ModKind kind = ModKind::BPSK;
    double carrier_hz = 1000.0;
    double symbol_rate = 100.0;
    double rrc_rolloff = 0.35;
    int rrc_span = 8;
    int mfsk_hop_interval = 50;
    std::vector<double> mfsk_tone_set;  // empty: default_tone_set(carrier_hz, symbol_rate)
};

// `count` tones spaced evenly over [center - 4R, center + 4R].
std::vector<double> default_tone_set(double center_hz, double symbol_rate, int count = 8);

struct Message {
    std::vector<std::uint32_t> symbols;
    int bits_per_symbol = 1;
};

// Bits carried per symbol; MFSK uses log2 of the tone count (a power of two).
int bits_per_symbol(ModKind kind, std::size_t tone_count = 8);

// Unit-power complex white Gaussian noise; real and imaginary parts each have
// variance 1/2.
Waveform generate_awgn(std::size_t n, double sample_rate, Seed seed);

// Continuous root-raised-cosine pulse at time u measured in symbol periods.
// Peak value at u = 0 is 1 - beta + 4 beta / pi.
double rrc_pulse(double u, double rolloff);

// Sampled RRC filter, span*sps + 1 taps (forced odd), unit energy.
std::vector<double> rrc_taps(double rolloff, int span, int sps);

// Complex constellation point for one symbol. MFSK has no constellation.
cplx constellation_point(ModKind kind, std::uint32_t symbol);

// Symbols needed to cover n samples, including the filter span.
std::size_t symbols_needed(const ModulationSpec& spec, std::size_t n, double sample_rate);

Message random_message(ModKind kind, std::size_t n_symbols, Seed seed, std::size_t tone_count = 8);

// Unit mean-power waveform: RRC-shaped symbol train mixed to the carrier.
// MFSK holds one tone for mfsk_hop_interval symbols; the tone of each block
// is the block's first symbol plus a seeded offset, modulo the tone count.
Waveform modulate(const ModulationSpec& spec, const Message& msg, std::size_t n,
                  double sample_rate, Seed seed);

double mean_power(const Waveform& w);

// Amplitude gain applied to `signal` by inject().
double injection_gain(const Waveform& background, const Waveform& signal, double snr_db);

// background + g*signal with g^2 P_sig = 10^(snr_db/10) P_bg. snr_db = -inf
// returns the background unchanged.
Waveform inject(const Waveform& background, const Waveform& signal, double snr_db);

Waveform scaled(const Waveform& w, cplx gain);
Waveform add(const Waveform& a, const Waveform& b);
Waveform remove_mean(const Waveform& w);

// Mean removed, then scaled so that sum |x|^2 dt = 1.
Waveform normalize(const Waveform& w);

// sum conj(x_k) y_k dt
cplx inner_product(const Waveform& x, const Waveform& y);

// Zeroes negative-frequency bins and doubles the positive ones.
Waveform analytic_signal(const Waveform& w);

// |X_k|^2 dt^2 on k*fs/N, k = 0..N-1. Integrates to sum |x|^2 dt.
SpectralDensity psd(const Waveform& w);

// Periodogram of the 2N-point zero-padded transform folded onto the
// half-rate lattice k*fs/(2N), k = 0..N-1. This is exactly the frequency
// marginal of the discrete Wigner-Ville transform.
SpectralDensity lattice_psd(const Waveform& w);

enum class WindowKind { Rectangular, Hann };

// |DFT|^2 dt^2 of successive windows. Row r covers samples [r*hop, r*hop+nfft).
TFGrid spectrogram(const Waveform& w, std::size_t nfft, std::size_t hop = 0,
                   WindowKind window = WindowKind::Rectangular);

}  // namespace wvtinfo
