// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include <cstdint>
#include <random>

namespace nightrain {

/// splitmix64 finalizer over (master, index); used for every derived seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Seeded generator with platform-independent sampling.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and
/// does its own integer/real mapping, since the std distributions are
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform01();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer in [lo, hi], inclusive, without modulo bias.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    /// Standard normal via Box-Muller.
    double normal();

private:
    std::mt19937_64 engine_;
};

} // namespace nightrain
