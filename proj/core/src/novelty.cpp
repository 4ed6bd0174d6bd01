#include "illuminate/divergence/novelty.hpp"

#include <algorithm>
#include <numeric>

namespace illuminate {

NoveltyArchive::NoveltyArchive(double threshold) : threshold_(threshold) {
    if (!(threshold > 0.0)) throw ContractViolation("novelty archive threshold must be > 0");
}

void NoveltyArchive::add(Descriptor point, double fitness, IndividualId id) {
    entries_.push_back(std::move(point));
    fitness_.push_back(fitness);
    ids_.push_back(id);
}

double mean_of_k_smallest(std::vector<double> values, std::size_t k) {
    if (values.empty()) throw ContractViolation("novelty undefined for empty reference set");
    if (k == 0) throw ContractViolation("k must be at least 1");
    const std::size_t n = std::min(k, values.size());
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n - 1),
                     values.end());
    // Sum in ascending order so the result does not depend on nth_element's layout.
    std::sort(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(n));
    const double sum = std::accumulate(values.begin(),
                                       values.begin() + static_cast<std::ptrdiff_t>(n), 0.0);
    return sum / static_cast<double>(n);
}

double novelty_score(const Descriptor& subject, std::span<const Descriptor> population,
                     const NoveltyArchive& archive, std::size_t k, Metric metric,
                     SelfReference self) {
    std::vector<double> distances;
    distances.reserve(population.size() + archive.size());
    bool excluded = self == SelfReference::none;
    auto visit = [&](const Descriptor& ref) {
        if (!excluded && ref == subject) {
            excluded = true;
            return;
        }
        distances.push_back(distance(metric, subject, ref));
    };
    for (const auto& ref : population) visit(ref);
    for (const auto& ref : archive.entries()) visit(ref);
    return mean_of_k_smallest(std::move(distances), k);
}

bool archive_consider(const Descriptor& subject, double score, NoveltyArchive& archive,
                      double fitness, IndividualId id) {
    if (score > archive.threshold()) {
        archive.add(subject, fitness, id);
        return true;
    }
    return false;
}

} // namespace illuminate
