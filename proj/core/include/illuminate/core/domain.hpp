#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "illuminate/core/rng.hpp"
#include "illuminate/core/types.hpp"

namespace illuminate {

/// Metric used for distance-based divergence (novelty, local-competition neighborhoods).
enum class Metric {
    euclidean,
    /// Fraction of coordinates that differ. Used for tile-level genomes.
    normalized_hamming,
};

double distance(Metric metric, std::span<const double> a, std::span<const double> b);

/// Search-space definition shared by every engine.
///
/// Implementations own their genome encoding and variation operators. `evaluate` must be
/// deterministic and all const members must be safe to call concurrently.
class Domain {
public:
    virtual ~Domain() = default;

    virtual std::string name() const = 0;
    virtual std::size_t descriptor_dims() const = 0;
    virtual std::vector<Bounds> descriptor_bounds() const = 0;

    /// Whether some genomes can be infeasible.
    virtual bool constrained() const = 0;

    virtual Genome random_genome(Rng& rng) const = 0;
    virtual Genome mutate(const Genome& parent, Rng& rng) const = 0;
    virtual Genome crossover(const Genome& a, const Genome& b, Rng& rng) const = 0;

    /// Throws EvaluationError naming the violated rule when the genome is malformed.
    virtual Evaluation evaluate(const Genome& genome) const = 0;

    /// Text form used by archive dumps and the steering service.
    virtual std::string render(const Genome& genome) const = 0;
    virtual Genome parse(std::string_view text) const = 0;

    /// Point used by distance-based divergence. Defaults to the behavior descriptor.
    virtual Descriptor divergence_point(const Individual& ind) const {
        return ind.evaluation.descriptor;
    }
    virtual Metric divergence_metric() const { return Metric::euclidean; }
};

} // namespace illuminate
