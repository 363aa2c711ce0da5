#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "wvtinfo/error.hpp"
#include "wvtinfo/io.hpp"

namespace wvtinfo {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is, const std::filesystem::path& path) {
    T v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof(T)))
        throw IoError("truncated file " + path.string());
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

double parse_number(const std::string& text, const std::filesystem::path& path, std::size_t line) {
    const char* b = text.data();
    const char* e = b + text.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    while (e > b && (e[-1] == ' ' || e[-1] == '\t' || e[-1] == '\r')) --e;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e)
        throw IoError(path.string() + ":" + std::to_string(line) + ": bad number '" + text + "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) return "nan";
    return std::string(buf.data(), ptr);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os << text;
    if (!os) throw IoError("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_waveform(const std::filesystem::path& path, const Waveform& w) {
    if (w.size() > UINT32_MAX) throw InvalidArgument("waveform too long for WVF1");
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os.write("WVF1", 4);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(w.size()));
    put<double>(os, w.sample_rate());
    for (const auto& s : w.samples()) {
        put<double>(os, s.real());
        put<double>(os, s.imag());
    }
    if (!os) throw IoError("write failed for " + path.string());
}

Waveform read_waveform(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "WVF1", 4) != 0)
        throw IoError(path.string() + ": not a WVF1 file");
    const auto n = get<std::uint32_t>(is, path);
    const auto fs = get<double>(is, path);
    std::vector<cplx> samples(n);
    for (auto& s : samples) {
        const double re = get<double>(is, path);
        const double im = get<double>(is, path);
        s = cplx(re, im);
    }
    return Waveform(std::move(samples), fs);
}

void write_waveform_csv(const std::filesystem::path& path, const Waveform& w) {
    std::string text = "t,re,im\n";
    for (std::size_t i = 0; i < w.size(); ++i) {
        text += format_double(w.origin_time() + static_cast<double>(i) * w.dt());
        text += ',' + format_double(w[i].real()) + ',' + format_double(w[i].imag()) + '\n';
    }
    write_text(path, text);
}

Waveform read_waveform_csv(const std::filesystem::path& path, double sample_rate) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open " + path.string());
    std::string line;
    std::vector<double> times;
    std::vector<cplx> samples;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv(line);
        if (lineno == 1 && !cells.empty() && cells[0].find('t') != std::string::npos) continue;
        if (cells.size() != 3) throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected 3 columns");
        times.push_back(parse_number(cells[0], path, lineno));
        samples.emplace_back(parse_number(cells[1], path, lineno), parse_number(cells[2], path, lineno));
    }
    if (samples.empty()) throw IoError(path.string() + ": no samples");
    double fs = sample_rate;
    if (fs <= 0.0) {
        if (times.size() < 2) throw IoError(path.string() + ": cannot infer sample rate from one row");
        fs = 1.0 / (times[1] - times[0]);
    }
    return Waveform(std::move(samples), fs, times.front());
}

Waveform load_waveform(const std::filesystem::path& path) {
    if (path.extension() == ".csv") return read_waveform_csv(path);
    return read_waveform(path);
}

std::string spectral_density_csv(const SpectralDensity& s) {
    std::string text = "freq_hz,value\n";
    for (std::size_t k = 0; k < s.size(); ++k)
        text += format_double(s.freq(k)) + ',' + format_double(s.values[k]) + '\n';
    return text;
}

void write_spectral_density(const std::filesystem::path& path, const SpectralDensity& s) {
    write_text(path, spectral_density_csv(s));
}

}  // namespace wvtinfo
