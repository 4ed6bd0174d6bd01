#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <typeinfo>
#include <vector>

#include "illuminate/core/error.hpp"

namespace illuminate {

/// Point in behavior space. Length equals the owning domain's descriptor dimensionality.
using Descriptor = std::vector<double>;

using IndividualId = std::uint64_t;

/// Closed-open interval [lo, hi) of one descriptor dimension.
struct Bounds {
    double lo = 0.0;
    double hi = 1.0;

    friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// Outcome of evaluating one genome.
///
/// Fitness is normalized to [0, 1] by every domain so that aggregate scores are comparable.
/// `infeasibility` is a non-negative distance to feasibility which is zero exactly when the
/// individual is feasible.
struct Evaluation {
    double fitness = 0.0;
    Descriptor descriptor;
    bool feasible = true;
    double infeasibility = 0.0;

    friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

/// Throws ContractViolation when `eval` breaks one of the Evaluation invariants.
void check_evaluation(const Evaluation& eval, std::size_t expected_dims);

/// Immutable, type-erased genome. Engines never look inside; domains recover their
/// concrete encoding with `as<T>()`.
class Genome {
public:
    Genome() = default;

    template <typename T>
    static Genome make(T value) {
        Genome g;
        g.data_ = std::make_shared<const T>(std::move(value));
        g.type_ = &typeid(T);
        return g;
    }

    template <typename T>
    const T& as() const {
        if (!data_ || *type_ != typeid(T))
            throw EvaluationError("genome does not hold the encoding expected by this domain");
        return *static_cast<const T*>(data_.get());
    }

    template <typename T>
    bool holds() const noexcept {
        return data_ && *type_ == typeid(T);
    }

    bool empty() const noexcept { return !data_; }

private:
    std::shared_ptr<const void> data_;
    const std::type_info* type_ = nullptr;
};

/// How an individual came to exist; derived from its parent count.
enum class Origin { seed, mutation, crossover };

const char* to_string(Origin origin);

/// The unit of search: genome, its evaluation, and lineage bookkeeping.
struct Individual {
    IndividualId id = 0;
    Genome genome;
    Evaluation evaluation;
    std::vector<IndividualId> parents;  // 0, 1 or 2 entries
    std::uint32_t birth_generation = 0;

    Origin origin() const noexcept {
        switch (parents.size()) {
        case 0: return Origin::seed;
        case 1: return Origin::mutation;
        default: return Origin::crossover;
        }
    }
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

} // namespace illuminate
