#pragma once

#include <cstddef>
#include <vector>

#include "illuminate/core/types.hpp"

namespace illuminate {

/// Every individual created during a run, indexed by id. Ids are dense and assigned in
/// creation order, so a parent id is always smaller than its child's.
class RunHistory {
public:
    IndividualId next_id() const noexcept { return individuals_.size(); }
    std::size_t size() const noexcept { return individuals_.size(); }
    bool contains(IndividualId id) const noexcept { return id < individuals_.size(); }

    /// Throws NotFound for an unknown id.
    const Individual& at(IndividualId id) const;
    const Individual& operator[](IndividualId id) const { return individuals_[id]; }

    /// Assigns the next id and stores the individual. Throws ContractViolation if a parent
    /// id does not refer to an earlier individual.
    const Individual& commit(Individual ind);

    auto begin() const { return individuals_.begin(); }
    auto end() const { return individuals_.end(); }

private:
    std::vector<Individual> individuals_;
};

} // namespace illuminate
