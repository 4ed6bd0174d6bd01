#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace illuminate {

/// Seeded random stream. Thin wrapper over mt19937_64 with the handful of draws the
/// engines need.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    /// Uniform index in [0, n). Draws nothing when n == 1, so a degenerate choice never
    /// shifts the stream.
    std::size_t below(std::size_t n);

    double normal(double mean, double stddev) {
        return std::normal_distribution<double>(mean, stddev)(engine_);
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Fresh seed for a private child stream.
    std::uint64_t next_seed() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

/// Named sub-streams derived from one master seed.
enum class Stream : std::uint64_t { variation = 1, selection = 2, domain = 3, summary = 4 };

/// Sub-stream seed: splitmix64(master + tag * 0x9E3779B97F4A7C15). Independent of how many
/// other streams exist or are consumed.
std::uint64_t derive_seed(std::uint64_t master, Stream stream);

std::uint64_t splitmix64(std::uint64_t x);

/// The run's sub-streams, all derived from the master seed.
struct RngStreams {
    explicit RngStreams(std::uint64_t master)
        : variation(derive_seed(master, Stream::variation)),
          selection(derive_seed(master, Stream::selection)),
          domain(derive_seed(master, Stream::domain)),
          summary(derive_seed(master, Stream::summary)) {}

    Rng variation;
    Rng selection;
    Rng domain;
    Rng summary;
};

} // namespace illuminate
