#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "illuminate/core/domain.hpp"
#include "illuminate/core/types.hpp"

namespace illuminate {

/// Retained descriptors of past novel individuals. Entries only ever grow.
///
/// Each entry also remembers the fitness and id of the individual it came from, so the
/// archive can serve as a local-competition neighborhood and be projected for reporting.
class NoveltyArchive {
public:
    explicit NoveltyArchive(double threshold = 0.05);

    double threshold() const noexcept { return threshold_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    std::span<const Descriptor> entries() const noexcept { return entries_; }
    std::span<const double> fitness() const noexcept { return fitness_; }
    std::span<const IndividualId> ids() const noexcept { return ids_; }

    void add(Descriptor point, double fitness = 0.0, IndividualId id = 0);

private:
    double threshold_;
    std::vector<Descriptor> entries_;
    std::vector<double> fitness_;
    std::vector<IndividualId> ids_;
};

/// Whether the subject already appears among the references it is scored against.
enum class SelfReference {
    /// Drop one reference equal to the subject before scoring.
    exclude_one,
    /// The subject is not part of the references; score against all of them.
    none,
};

/// Mean of the `k` smallest values, or of all of them when fewer than `k` exist.
/// Throws ContractViolation on an empty input.
double mean_of_k_smallest(std::vector<double> values, std::size_t k);

/// Mean distance from `subject` to its `k` nearest neighbors among `population` and the
/// archive entries. Throws ContractViolation("novelty undefined for empty reference set")
/// when nothing remains after removing the subject itself.
double novelty_score(const Descriptor& subject, std::span<const Descriptor> population,
                     const NoveltyArchive& archive, std::size_t k,
                     Metric metric = Metric::euclidean,
                     SelfReference self = SelfReference::exclude_one);

/// Appends `subject` iff `score` exceeds the archive threshold.
bool archive_consider(const Descriptor& subject, double score, NoveltyArchive& archive,
                      double fitness = 0.0, IndividualId id = 0);

} // namespace illuminate
