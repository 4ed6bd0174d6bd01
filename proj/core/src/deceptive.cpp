#include "illuminate/domains/deceptive.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace illuminate::domains {

double deceptive_fitness(std::span<const double> genome, const DeceptiveConfig& config) {
    double sq = 0.0;
    for (double g : genome) sq += (g - config.target) * (g - config.target);
    double fitness = std::max(0.0, 1.0 - std::sqrt(sq) / config.scale);
    // The moat lives in the plane of the first two genes, the same plane the descriptor
    // covers, so a feature map can lay stepping stones across it.
    const double plane = std::hypot(genome[0] - config.target, genome[1] - config.target);
    if (plane >= config.moat_inner && plane <= config.moat_outer) fitness *= config.moat_factor;
    return fitness;
}

Descriptor deceptive_descriptor(std::span<const double> genome) {
    return {(genome[0] + 1.0) / 2.0, (genome[1] + 1.0) / 2.0};
}

DeceptiveDomain::DeceptiveDomain(DeceptiveConfig config) : config_(config) {
    if (config_.dims < 2) throw ContractViolation("deceptive domain needs at least two dimensions");
    if (!(config_.scale > 0.0)) throw ContractViolation("deceptive scale must be positive");
    if (!(config_.gene_mutation_rate >= 0.0 && config_.gene_mutation_rate <= 1.0))
        throw ContractViolation("gene mutation rate must lie in [0, 1]");
    if (!(config_.mutation_sigma > 0.0)) throw ContractViolation("mutation sigma must be positive");
    if (!(config_.moat_factor >= 0.0)) throw ContractViolation("moat factor must be non-negative");
    if (!(config_.start_corner > -1.0 && config_.start_corner <= 1.0))
        throw ContractViolation("deceptive start corner must lie in (-1, 1]");
    if (!(config_.moat_inner <= config_.moat_outer))
        throw ContractViolation("moat inner radius must not exceed the outer radius");
}

const ContinuousGenome& DeceptiveDomain::genes_of(const Genome& genome) const {
    const auto& genes = genome.as<ContinuousGenome>();
    if (genes.size() != config_.dims)
        throw EvaluationError("genome has " + std::to_string(genes.size()) + " genes, expected " +
                              std::to_string(config_.dims));
    for (double g : genes)
        if (!std::isfinite(g) || g < -1.0 || g > 1.0)
            throw EvaluationError("genes must be finite and within [-1, 1]");
    return genes;
}

Genome DeceptiveDomain::random_genome(Rng& rng) const {
    ContinuousGenome genes(config_.dims);
    for (std::size_t i = 0; i < genes.size(); ++i)
        genes[i] = rng.uniform(-1.0, i < 2 ? config_.start_corner : 1.0);
    return Genome::make(std::move(genes));
}

Genome DeceptiveDomain::mutate(const Genome& parent, Rng& rng) const {
    ContinuousGenome genes = genes_of(parent);
    bool touched = false;
    for (auto& g : genes) {
        if (!rng.bernoulli(config_.gene_mutation_rate)) continue;
        g = std::clamp(g + rng.normal(0.0, config_.mutation_sigma), -1.0, 1.0);
        touched = true;
    }
    if (!touched) {
        auto& g = genes[rng.below(genes.size())];
        g = std::clamp(g + rng.normal(0.0, config_.mutation_sigma), -1.0, 1.0);
    }
    return Genome::make(std::move(genes));
}

Genome DeceptiveDomain::crossover(const Genome& a, const Genome& b, Rng& rng) const {
    ContinuousGenome child = genes_of(a);
    const auto& other = genes_of(b);
    for (std::size_t i = 0; i < child.size(); ++i)
        if (rng.bernoulli(0.5)) child[i] = other[i];
    return Genome::make(std::move(child));
}

Evaluation DeceptiveDomain::evaluate(const Genome& genome) const {
    const auto& genes = genes_of(genome);
    Evaluation eval;
    eval.fitness = deceptive_fitness(genes, config_);
    eval.descriptor = deceptive_descriptor(genes);
    return eval;
}

std::string DeceptiveDomain::render(const Genome& genome) const {
    std::string out;
    char buf[32];
    for (double g : genes_of(genome)) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, g);
        if (!out.empty()) out.push_back(' ');
        out.append(buf, end);
    }
    return out;
}

Genome DeceptiveDomain::parse(std::string_view text) const {
    ContinuousGenome genes;
    const char* p = text.data();
    const char* end = text.data() + text.size();
    while (p < end) {
        while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
        if (p == end) break;
        double v = 0.0;
        auto [next, ec] = std::from_chars(p, end, v);
        if (ec != std::errc()) throw EvaluationError("malformed gene value in genome text");
        genes.push_back(v);
        p = next;
    }
    Genome g = Genome::make(std::move(genes));
    genes_of(g);
    return g;
}

} // namespace illuminate::domains
