#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "illuminate/core/domain.hpp"

namespace illuminate::domains {

/// Synthetic deceptive landscape over [-1, 1]^D.
///
/// Fitness falls off linearly with Euclidean distance to a target point,
/// max(0, 1 - |g - target| / scale), and is multiplied by `moat_factor` when the first two
/// genes lie in the closed annulus [moat_inner, moat_outer] around the target's first two
/// coordinates. Objective-only search climbs to the outer rim of the moat and stalls there;
/// anything scoring >= 0.9 has crossed it.
struct DeceptiveConfig {
    std::size_t dims = 10;
    /// Target coordinate, repeated in every dimension.
    double target = 0.5;
    double moat_inner = 0.3;
    double moat_outer = 0.5;
    double moat_factor = 0.1;
    /// Distance at which fitness reaches zero: the diameter of the [-1, 1]^2 descriptor plane.
    double scale = 2.0 * std::numbers::sqrt2;
    /// Per-gene mutation probability; at least one gene always mutates.
    double gene_mutation_rate = 0.1;
    /// Random genomes draw their first two genes from [-1, start_corner], a start region
    /// on the far side of the moat. The remaining genes use the full range.
    double start_corner = 0.0;
    double mutation_sigma = 0.05;
};

using ContinuousGenome = std::vector<double>;

double deceptive_fitness(std::span<const double> genome, const DeceptiveConfig& config);

/// First two coordinates mapped from [-1, 1] to [0, 1].
Descriptor deceptive_descriptor(std::span<const double> genome);

class DeceptiveDomain final : public Domain {
public:
    explicit DeceptiveDomain(DeceptiveConfig config = {});

    const DeceptiveConfig& config() const noexcept { return config_; }
    std::vector<double> target() const { return std::vector<double>(config_.dims, config_.target); }

    std::string name() const override { return "deceptive"; }
    std::size_t descriptor_dims() const override { return 2; }
    std::vector<Bounds> descriptor_bounds() const override { return {{0.0, 1.0}, {0.0, 1.0}}; }
    bool constrained() const override { return false; }

    Genome random_genome(Rng& rng) const override;
    /// Gaussian perturbation of a random subset of genes, clamped to [-1, 1].
    Genome mutate(const Genome& parent, Rng& rng) const override;
    /// Uniform crossover.
    Genome crossover(const Genome& a, const Genome& b, Rng& rng) const override;
    Evaluation evaluate(const Genome& genome) const override;

    /// Space-separated shortest round-trip decimal representations.
    std::string render(const Genome& genome) const override;
    Genome parse(std::string_view text) const override;

private:
    const ContinuousGenome& genes_of(const Genome& genome) const;

    DeceptiveConfig config_;
};

} // namespace illuminate::domains
