#include "illuminate/core/types.hpp"

#include <cmath>
#include <string>

#include "illuminate/core/domain.hpp"

namespace illuminate {

void check_evaluation(const Evaluation& eval, std::size_t expected_dims) {
    if (!std::isfinite(eval.fitness) || eval.fitness < 0.0 || eval.fitness > 1.0)
        throw ContractViolation("fitness must be finite and within [0, 1], got " +
                                std::to_string(eval.fitness));
    if (eval.descriptor.size() != expected_dims)
        throw ContractViolation("descriptor has " + std::to_string(eval.descriptor.size()) +
                                " entries, domain declares " + std::to_string(expected_dims));
    for (double v : eval.descriptor)
        if (!std::isfinite(v)) throw ContractViolation("descriptor entries must be finite");
    if (!std::isfinite(eval.infeasibility) || eval.infeasibility < 0.0)
        throw ContractViolation("infeasibility must be finite and non-negative");
    if (eval.feasible != (eval.infeasibility == 0.0))
        throw ContractViolation("feasible flag disagrees with infeasibility distance");
}

const char* to_string(Origin origin) {
    switch (origin) {
    case Origin::seed: return "seed";
    case Origin::mutation: return "mutation";
    case Origin::crossover: return "crossover";
    }
    return "unknown";
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ContractViolation("descriptor dimensionality mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double distance(Metric metric, std::span<const double> a, std::span<const double> b) {
    switch (metric) {
    case Metric::euclidean: return euclidean_distance(a, b);
    case Metric::normalized_hamming: {
        if (a.size() != b.size()) throw ContractViolation("point dimensionality mismatch");
        if (a.empty()) return 0.0;
        std::size_t differing = 0;
        for (std::size_t i = 0; i < a.size(); ++i) differing += a[i] != b[i];
        return static_cast<double>(differing) / static_cast<double>(a.size());
    }
    }
    return 0.0;
}

} // namespace illuminate
