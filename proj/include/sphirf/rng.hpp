#pragma once

#include <cstdint>
#include <random>

namespace sphirf {

/// Seedable uniform generator with a fully specified algorithm:
/// std::mt19937_64 (the standard pins its state transitions and single-value
/// seeding), with doubles built from the top 53 bits of each output word.
/// Identical seeds therefore reproduce identical streams on any conforming
/// implementation, which is what makes the CSV outputs portable.
class UniformRng {
public:
    explicit UniformRng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0, 1).
    double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform on [-1, 1).
    double next_symmetric() { return 2.0 * next_unit() - 1.0; }

private:
    std::mt19937_64 gen_;
};

}  // namespace sphirf
