#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace wvtinfo {

// Identifies one independent random stream. Identical seed and parameters
// produce bit-identical output on every platform the library supports.
struct Seed {
    std::uint64_t value = 0;

    friend bool operator==(const Seed&, const Seed&) = default;
};

// Child stream for (parent, tags...). Mixing is splitmix64 based so nearby
// parent values and tags give uncorrelated children.
Seed derive(Seed parent, std::initializer_list<std::uint64_t> tags);

// Portable generator. Distributions are implemented here rather than taken
// from <random>, whose distribution algorithms are implementation-defined.
class Rng {
public:
    explicit Rng(Seed seed);

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

    // Standard normal (Marsaglia polar method, spare value cached).
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace wvtinfo
