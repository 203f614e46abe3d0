#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace tspsd {

/// splitmix64 finalizer; used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Seeded generator with distribution code of our own, so sequences are the
/// same on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() noexcept;                   // [0, 1)
    double uniform(double lo, double hi) noexcept;
    std::size_t index(std::size_t n) noexcept;   // [0, n), n > 0
    double normal() noexcept;                    // standard normal

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace tspsd
