#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace seatplan {

// Standard distributions are implementation-defined, so draws go through the
// helpers below to keep results identical across standard libraries.

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n);

    /// Uniform real in [lo, hi).
    double uniform(double lo, double hi);

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace seatplan
