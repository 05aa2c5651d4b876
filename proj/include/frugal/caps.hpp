#pragma once

#include <cstddef>

namespace frugal {

/// Limits on the exhaustive enumerations used for LP constraint generation and oracles.
struct ScaleCaps {
    std::size_t max_paths = 100000;             // simple s-t paths
    std::size_t max_independent_sets = 10000;   // maximal independent sets
    std::size_t max_cover_candidates = 1u << 20; // generic min-cover solver
    int max_enum_agents = 20;                   // vertex-cover / cut set systems
    int max_flow_enum_edges = 16;               // k-flow set systems
    int max_brute_cut_edges = 14;               // subset enumeration of double cuts

    /// Defaults, with the count caps overridden by FRUGAL_SCALE_CAP when set.
    static ScaleCaps from_env();
};

/// Process-wide caps, read from the environment once.
const ScaleCaps& default_caps();

} // namespace frugal
