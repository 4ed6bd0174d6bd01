#include "illuminate/core/history.hpp"

#include <string>

namespace illuminate {

const Individual& RunHistory::at(IndividualId id) const {
    if (id >= individuals_.size())
        throw NotFound("unknown individual id " + std::to_string(id));
    return individuals_[id];
}

const Individual& RunHistory::commit(Individual ind) {
    if (ind.parents.size() > 2) throw ContractViolation("an individual has at most two parents");
    const IndividualId id = next_id();
    for (IndividualId p : ind.parents)
        if (p >= id)
            throw ContractViolation("parent id " + std::to_string(p) +
                                    " does not refer to an earlier individual");
    ind.id = id;
    individuals_.push_back(std::move(ind));
    return individuals_.back();
}

} // namespace illuminate
