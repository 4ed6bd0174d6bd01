#pragma once

#include <memory>

#include "illuminate/engines/engine.hpp"

namespace illuminate::detail {

std::unique_ptr<Engine> make_map_elites(const EngineConfig&, std::shared_ptr<const Domain>,
                                        std::uint64_t seed);
std::unique_ptr<Engine> make_constrained_map_elites(const EngineConfig&,
                                                    std::shared_ptr<const Domain>,
                                                    std::uint64_t seed);
std::unique_ptr<Engine> make_two_population(const EngineConfig&, std::shared_ptr<const Domain>,
                                            std::uint64_t seed);
std::unique_ptr<Engine> make_local_competition(const EngineConfig&,
                                               std::shared_ptr<const Domain>, std::uint64_t seed);
std::unique_ptr<Engine> make_objective_ga(const EngineConfig&, std::shared_ptr<const Domain>,
                                          std::uint64_t seed);

using ParentPair = std::pair<IndividualId, std::optional<IndividualId>>;

} // namespace illuminate::detail
