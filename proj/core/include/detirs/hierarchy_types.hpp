#pragma once

#include <string>
#include <vector>

#include "detirs/group.hpp"
#include "detirs/rational.hpp"

namespace detirs {

/// Probability assignment over admissible subsets of a finite word set.
/// Each support is a "partial subgroup" of the domain: it contains the
/// identity, is inverse-closed, and is closed under products that land in the
/// domain. Supports are stored as sorted index lists into domain.elements.
struct LocalDistribution {
    WordSet domain;
    std::vector<std::vector<int>> supports;
    std::vector<Rat> weights;

    int atom_count() const { return static_cast<int>(supports.size()); }
};

/// Empty string when the distribution is well-formed (weights nonnegative and
/// summing to one, supports admissible and sorted); otherwise a description of
/// the first violation.
std::string validate_local_distribution(const LocalDistribution& dist);

/// True when the subset (as sorted indices into domain) is a partial subgroup.
bool is_partial_subgroup(const WordSet& domain, const std::vector<int>& subset);

}  // namespace detirs
