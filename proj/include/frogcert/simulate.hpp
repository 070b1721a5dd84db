#pragma once

// Monte Carlo engines for the frog model on the 3,2-alternating tree:
// episode batches for the original / non-backtracking / self-similar
// variants, single-walk hitting-probability estimators, loop-erasure
// transition estimators, and the coupled triple-layer episodes that back
// the dominance checks V <= V' <= Z.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frogcert/tree.hpp"

namespace frogcert {

enum class Variant { original, nonbacktracking, selfsimilar };

std::string variant_name(Variant v);
std::optional<Variant> variant_from_name(const std::string& s);

struct ModelConfig {
    Variant variant = Variant::nonbacktracking;
    std::uint32_t depth_cap = 8;   // frogs moving past this depth are killed
    std::uint32_t step_cap = 256;  // synchronous ticks (or walk steps) per episode
    std::uint64_t master_seed = 1;
    std::uint64_t episodes = 1000;
    int threads = 1;

    void validate() const;
};

struct EpisodeOutcome {
    std::uint64_t root_hits = 0;     // Z, V' or V depending on variant
    std::uint32_t activated_frogs = 0;
    bool truncated = false;          // some frog was killed or cut by a cap
};

EpisodeOutcome run_episode(const ModelConfig& config, std::uint64_t episode_index);

struct EpisodeRecord {
    std::uint32_t root_hits = 0;
    std::uint8_t truncated = 0;
};

struct BatchStats {
    std::uint64_t episodes = 0;
    std::uint64_t total_root_hits = 0;
    std::uint64_t sum_sq_root_hits = 0;
    std::uint64_t total_activated = 0;
    std::uint64_t truncated_episodes = 0;
    std::vector<EpisodeRecord> records; // indexed by episode

    double mean_root_hits() const;
    double stderr_root_hits() const;
};

BatchStats run_episode_batch(const ModelConfig& config);

struct HitProbEstimate {
    int start_depth = 0;
    std::uint64_t episodes = 0;
    std::uint64_t hits = 0;
    std::uint64_t truncated = 0; // walks cut by step_cap while undecided
    double estimate = 0.0;
    double stderr = 0.0;
};

// Fraction of simple random walks from a canonical depth-1 or depth-2
// vertex that reach the parent before a cap kills them. Expected 4/9 and
// 3/8; with depth_cap >= 40 the one-sided truncation bias is far below the
// Monte Carlo noise.
HitProbEstimate estimate_hit_prob(int start_depth, const ModelConfig& config);

struct FreqTally {
    std::uint64_t numer = 0;
    std::uint64_t denom = 0;
    double freq() const {
        return denom ? static_cast<double>(numer) / static_cast<double>(denom) : 0.0;
    }
    double stderr() const;
};

struct PhiTransitionStats {
    // First-step-to-root frequency of the loop-erased walk, by parity of the
    // start depth. Expected 1/3 (odd) and 1/4 (even).
    FreqTally first_step_odd;
    FreqTally first_step_even;
    // Root-ward step following a root-ward arrival at level n, by parity of
    // n. Expected 1/2 (odd) and 1/3 (even).
    FreqTally chain_odd;
    FreqTally chain_even;
    std::uint64_t episodes = 0;
    std::uint64_t truncated = 0; // walks cut mid-flight, excluded from tallies
};

// Runs the biased-walk construction (simple random walk plus the 5/8
// root-child termination), derives the loop erasure, and tallies its
// empirical transition frequencies. Episodes cycle over start depths
// 1, 2, 3, 4.
PhiTransitionStats estimate_phi_transitions(const ModelConfig& config);

struct FrogPaths {
    NodeAddress origin;
    std::vector<NodeAddress> walk;    // the biased-walk realization
    std::vector<NodeAddress> erased;  // its loop erasure (stopped at the root)
    std::vector<std::uint32_t> t_index; // t_k into walk
    std::vector<std::uint32_t> s_index; // s_k (last-visit index of walk[t_k])
};

struct CoupledEpisode {
    std::uint64_t Z = 0;   // root landings, walk layer
    std::uint64_t Vp = 0;  // frogs reaching the root, loop-erased replay
    std::uint64_t V = 0;   // same with self-similar stopping
    bool subset_ok = true; // every erased path is a subsequence of its walk
    bool dominance_ok = true; // V <= Vp <= Z
    bool truncated = false;   // a frog was still mid-flight at the tick cap
    std::uint32_t activated_walk = 0;
    std::vector<FrogPaths> paths; // populated only when keep_paths
};

CoupledEpisode run_coupled_episode(const ModelConfig& config,
                                   std::uint64_t episode_index,
                                   bool keep_paths = false);

struct CoupledBatchStats {
    std::uint64_t episodes = 0;
    std::uint64_t truncated = 0;
    std::uint64_t subset_violations = 0;    // among non-truncated episodes
    std::uint64_t dominance_violations = 0; // among non-truncated episodes
    std::uint64_t sum_Z = 0;
    std::uint64_t sum_Vp = 0;
    std::uint64_t sum_V = 0;
    double truncation_rate() const {
        return episodes ? static_cast<double>(truncated) / static_cast<double>(episodes) : 0.0;
    }
};

CoupledBatchStats run_coupled_batch(const ModelConfig& config);

// CSV export: header then one row per episode.
void write_episode_csv(const std::string& path, Variant variant,
                       const std::vector<EpisodeRecord>& records);

} // namespace frogcert
