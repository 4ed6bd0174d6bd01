#include "illuminate/core/rng.hpp"

namespace illuminate {

std::size_t Rng::below(std::size_t n) {
    if (n <= 1) return 0;
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, Stream stream) {
    return splitmix64(master + static_cast<std::uint64_t>(stream) * 0x9E3779B97F4A7C15ULL);
}

} // namespace illuminate
