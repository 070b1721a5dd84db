#include "frogcert/simulate.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "frogcert/rng.hpp"

namespace frogcert {

using VertexId = TreeArena::VertexId;

std::string variant_name(Variant v) {
    switch (v) {
    case Variant::original: return "original";
    case Variant::nonbacktracking: return "nonbacktracking";
    case Variant::selfsimilar: return "selfsimilar";
    }
    return "?";
}

std::optional<Variant> variant_from_name(const std::string& s) {
    if (s == "original") return Variant::original;
    if (s == "nonbacktracking") return Variant::nonbacktracking;
    if (s == "selfsimilar") return Variant::selfsimilar;
    return std::nullopt;
}

void ModelConfig::validate() const {
    if (depth_cap < 2)
        throw std::invalid_argument("ModelConfig: depth_cap must be >= 2");
    if (step_cap < 1)
        throw std::invalid_argument("ModelConfig: step_cap must be >= 1");
    if (episodes < 1)
        throw std::invalid_argument("ModelConfig: episodes must be >= 1");
    if (threads < 1)
        throw std::invalid_argument("ModelConfig: threads must be >= 1");
}

double BatchStats::mean_root_hits() const {
    return episodes ? static_cast<double>(total_root_hits) / static_cast<double>(episodes)
                    : 0.0;
}

double BatchStats::stderr_root_hits() const {
    if (episodes < 2) return 0.0;
    const double n = static_cast<double>(episodes);
    const double mean = mean_root_hits();
    const double var =
        (static_cast<double>(sum_sq_root_hits) - n * mean * mean) / (n - 1.0);
    return std::sqrt(std::max(0.0, var) / n);
}

double FreqTally::stderr() const {
    if (denom < 2) return 0.0;
    const double p = freq();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(denom));
}

namespace {

constexpr std::uint32_t kAsleep = 0xffffffffu;
constexpr std::uint8_t kNoSubtree = 0xff;

struct Frog {
    VertexId origin;
    VertexId pos;
    VertexId prev; // kNone before the first move
    StreamRng rng;
    std::uint8_t home_subtree; // root-child digit of origin; kNoSubtree for the root frog
    bool moving = true;
};

struct SchedKind {
    bool nonbacktracking = false; // NB step law, stopped at the root
    bool selfsimilar = false;     // down-edge quotas (implies nonbacktracking)
    bool upsilon = false;         // SRW with the 5/8 root-child termination
    bool record_paths = false;
};

struct SchedResult {
    std::uint64_t root_hits = 0;
    std::uint32_t activated = 0;
    bool killed_by_depth = false;
    bool cut_by_tick_cap = false;
    std::vector<std::vector<VertexId>> paths; // per frog, when recorded
    std::vector<VertexId> origins;            // per frog
};

// Synchronous-tick frog model. All active frogs move once per tick in frog-id
// order; frogs woken by a landing start moving the next tick. Ties on edge
// quotas resolve to the lowest id via the processing order.
class Scheduler {
public:
    Scheduler(const ModelConfig& cfg, std::uint64_t episode, SchedKind kind)
        : cfg_(cfg), episode_(episode), kind_(kind) {
        ensure_vertex_state();
        spawn(TreeArena::kRoot, kAsleep);
    }

    SchedResult run() {
        std::uint32_t tick = 0;
        while (tick < cfg_.step_cap) {
            ++tick;
            for (std::uint32_t id : pending_)
                active_.push_back(id);
            pending_.clear();
            if (active_.empty())
                break;
            step_all();
        }
        res_.cut_by_tick_cap = !active_.empty() || !pending_.empty();
        res_.activated = static_cast<std::uint32_t>(frogs_.size());
        if (kind_.record_paths) {
            res_.origins.reserve(frogs_.size());
            for (const auto& f : frogs_)
                res_.origins.push_back(f.origin);
        }
        return std::move(res_);
    }

    TreeArena& arena() { return arena_; }

private:
    void ensure_vertex_state() {
        const std::size_t n = arena_.size();
        if (native_.size() < n) {
            native_.resize(n, kAsleep);
            activator_.resize(n, kAsleep);
            down_count_.resize(n, 0);
            first_passer_.resize(n, kAsleep);
        }
    }

    std::uint32_t spawn(VertexId origin, std::uint32_t activator_id) {
        const auto id = static_cast<std::uint32_t>(frogs_.size());
        const std::uint64_t key =
            stream_key(cfg_.master_seed, episode_, arena_.hash(origin));
        frogs_.push_back(Frog{origin, origin, TreeArena::kNone, StreamRng(key),
                              origin == TreeArena::kRoot ? kNoSubtree
                                                         : first_digit(origin),
                              true});
        if (origin != TreeArena::kRoot) {
            native_[origin] = id;
            activator_[origin] = activator_id;
        }
        if (kind_.record_paths)
            res_.paths.push_back({origin});
        pending_.push_back(id);
        return id;
    }

    std::uint8_t first_digit(VertexId v) const {
        VertexId w = v;
        while (arena_.parent(w) != TreeArena::kRoot)
            w = arena_.parent(w);
        return arena_.digit(w);
    }

    // Uniform draw over the frog's legal steps (all neighbors, minus the
    // previous vertex under the non-backtracking law). Children past the
    // depth cap take part in the draw but picking one kills the frog
    // (returns kNone); they are never materialized.
    VertexId choose_dest(Frog& f, bool& terminates) {
        terminates = false;
        const VertexId pos = f.pos;
        const bool at_root = pos == TreeArena::kRoot;
        const int down = arena_.degree_down(pos);
        const bool nb = kind_.nonbacktracking && f.prev != TreeArena::kNone;

        bool parent_opt = !at_root;
        int excluded_child = -1;
        if (nb) {
            if (!at_root && f.prev == arena_.parent(pos))
                parent_opt = false;
            else if (arena_.parent(f.prev) == pos)
                excluded_child = arena_.digit(f.prev);
        }
        const int child_opts = down - (excluded_child >= 0 ? 1 : 0);
        const int total = (parent_opt ? 1 : 0) + child_opts;
        const auto pick =
            static_cast<int>(f.rng.bounded(static_cast<std::uint32_t>(total)));

        if (parent_opt && pick == 0)
            return arena_.parent(pos);

        int digit = pick - (parent_opt ? 1 : 0);
        if (excluded_child >= 0 && digit >= excluded_child)
            ++digit;
        if (arena_.depth(pos) + 1 > cfg_.depth_cap)
            return TreeArena::kNone; // depth kill
        const VertexId dest = arena_.child(pos, digit);
        if (kind_.upsilon && at_root && f.home_subtree != kNoSubtree &&
            arena_.digit(dest) != f.home_subtree) {
            terminates = f.rng.bernoulli(5, 8);
        }
        return dest;
    }

    // Rule (i)/(ii) resolution for a down move from pos to child dest.
    // Returns true when the frog is stopped upon landing.
    bool quota_stop(std::uint32_t id, VertexId pos, VertexId dest) {
        const std::uint8_t cnt = down_count_[dest];
        if (cnt == 0) {
            down_count_[dest] = 1;
            first_passer_[dest] = id;
            return false;
        }
        if (arena_.depth(pos) % 2 == 0)
            return true; // rule (i): even->odd edges admit one frog ever
        if (cnt >= 2)
            return true;
        // rule (ii): the second unstopped landing must be the pair
        // {native frog of the parent, the frog that activated it}, and the
        // sibling's frog must still be asleep.
        const std::uint32_t nat = native_[pos];
        const std::uint32_t act = activator_[pos];
        const std::uint32_t first = first_passer_[dest];
        const bool designated = nat != kAsleep && act != kAsleep &&
            ((first == nat && id == act) || (first == act && id == nat));
        if (!designated)
            return true;
        const VertexId sib = arena_.sibling(dest);
        ensure_vertex_state();
        if (native_[sib] != kAsleep)
            return true;
        down_count_[dest] = 2;
        return false;
    }

    void step_all() {
        const std::size_t snapshot = active_.size();
        for (std::size_t k = 0; k < snapshot; ++k) {
            const std::uint32_t id = active_[k];
            Frog& f = frogs_[id];
            if (!f.moving) continue;

            bool terminates = false;
            const VertexId dest = choose_dest(f, terminates);
            if (dest == TreeArena::kNone) {
                f.moving = false;
                res_.killed_by_depth = true;
                continue;
            }
            ensure_vertex_state();

            bool stopped = terminates;
            if (kind_.selfsimilar && arena_.parent(dest) == f.pos &&
                quota_stop(id, f.pos, dest))
                stopped = true;

            f.prev = f.pos;
            f.pos = dest;
            if (kind_.record_paths)
                res_.paths[id].push_back(dest);

            if (dest == TreeArena::kRoot) {
                ++res_.root_hits;
                if (kind_.nonbacktracking)
                    stopped = true;
            } else if (native_[dest] == kAsleep) {
                spawn(dest, id); // may reallocate frogs_; f is dead now
            }
            if (stopped)
                frogs_[id].moving = false;
        }
        active_.erase(std::remove_if(active_.begin(), active_.end(),
                                     [this](std::uint32_t id) {
                                         return !frogs_[id].moving;
                                     }),
                      active_.end());
    }

    const ModelConfig& cfg_;
    std::uint64_t episode_;
    SchedKind kind_;
    TreeArena arena_;
    std::vector<Frog> frogs_;
    std::vector<std::uint32_t> active_;  // ascending frog ids
    std::vector<std::uint32_t> pending_; // woken this tick, move next tick
    std::vector<std::uint32_t> native_;
    std::vector<std::uint32_t> activator_;
    std::vector<std::uint8_t> down_count_;
    std::vector<std::uint32_t> first_passer_;
    SchedResult res_;
};

// Last-exit loop erasure of a finished walk. For non-root starts the erased
// path freezes at its first root entry; a root-started walk yields the
// loop-erased escape ray.
struct Erasure {
    std::vector<VertexId> phi;
    std::vector<std::uint32_t> t_index;
    std::vector<std::uint32_t> s_index;
};

Erasure loop_erase(const std::vector<VertexId>& walk) {
    Erasure e;
    if (walk.empty()) return e;
    std::unordered_map<VertexId, std::uint32_t> last;
    last.reserve(walk.size() * 2);
    for (std::uint32_t i = 0; i < walk.size(); ++i)
        last[walk[i]] = i;
    std::uint32_t t = 0;
    e.phi.push_back(walk[0]);
    e.t_index.push_back(0);
    for (;;) {
        const std::uint32_t s = last[walk[t]];
        e.s_index.push_back(s);
        if (e.phi.back() == TreeArena::kRoot && e.phi.size() > 1)
            break;
        if (s + 1 >= walk.size())
            break;
        t = s + 1;
        e.phi.push_back(walk[t]);
        e.t_index.push_back(t);
    }
    return e;
}

bool is_subsequence(const std::vector<VertexId>& sub,
                    const std::vector<VertexId>& full) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < full.size() && j < sub.size(); ++i)
        if (full[i] == sub[j]) ++j;
    return j == sub.size();
}

// Single biased walk (SRW + 5/8 root-child termination), vertex-resolved.
struct WalkResult {
    std::vector<VertexId> path;
    bool terminated = false;
    bool depth_killed = false;
    bool cut = false; // ran out of steps while still in flight
};

WalkResult upsilon_walk(TreeArena& arena, const NodeAddress& start,
                        StreamRng& rng, std::uint32_t depth_cap,
                        std::uint32_t step_cap) {
    VertexId pos = TreeArena::kRoot;
    for (std::uint8_t d : start.digits)
        pos = arena.child(pos, d);
    const std::uint8_t home =
        start.digits.empty() ? kNoSubtree : start.digits.front();

    WalkResult r;
    r.path.push_back(pos);
    for (std::uint32_t step = 0; step < step_cap; ++step) {
        const bool at_root = pos == TreeArena::kRoot;
        const int down = arena.degree_down(pos);
        const int total = (at_root ? 0 : 1) + down;
        const auto pick =
            static_cast<int>(rng.bounded(static_cast<std::uint32_t>(total)));
        VertexId dest;
        if (!at_root && pick == 0) {
            dest = arena.parent(pos);
        } else {
            if (arena.depth(pos) + 1 > depth_cap) {
                r.depth_killed = true;
                return r;
            }
            dest = arena.child(pos, at_root ? pick : pick - 1);
        }
        bool term = false;
        if (at_root && home != kNoSubtree && arena.digit(dest) != home)
            term = rng.bernoulli(5, 8);
        pos = dest;
        r.path.push_back(pos);
        if (term) {
            r.terminated = true;
            return r;
        }
    }
    r.cut = true;
    return r;
}

void for_each_episode(std::uint64_t episodes, int threads,
                      const std::function<void(std::uint64_t, int)>& body) {
    if (threads <= 1 || episodes < 2) {
        for (std::uint64_t i = 0; i < episodes; ++i)
            body(i, 0);
        return;
    }
    const int nt = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), episodes));
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::uint64_t chunk = (episodes + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        const std::uint64_t lo = chunk * static_cast<std::uint64_t>(t);
        const std::uint64_t hi = std::min(episodes, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi, t] {
            for (std::uint64_t i = lo; i < hi; ++i)
                body(i, t);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace

EpisodeOutcome run_episode(const ModelConfig& config, std::uint64_t episode_index) {
    config.validate();
    SchedKind kind;
    switch (config.variant) {
    case Variant::original: break;
    case Variant::nonbacktracking: kind.nonbacktracking = true; break;
    case Variant::selfsimilar:
        kind.nonbacktracking = true;
        kind.selfsimilar = true;
        break;
    }
    Scheduler sched(config, episode_index, kind);
    const SchedResult r = sched.run();
    EpisodeOutcome out;
    out.root_hits = r.root_hits;
    out.activated_frogs = r.activated;
    out.truncated = r.killed_by_depth || r.cut_by_tick_cap;
    return out;
}

BatchStats run_episode_batch(const ModelConfig& config) {
    config.validate();
    BatchStats stats;
    stats.episodes = config.episodes;
    stats.records.resize(config.episodes);

    struct Partial {
        std::uint64_t hits = 0, sq = 0, act = 0, trunc = 0;
    };
    std::vector<Partial> parts(std::max(1, config.threads));
    for_each_episode(config.episodes, config.threads,
                     [&](std::uint64_t i, int slot) {
                         const EpisodeOutcome o = run_episode(config, i);
                         stats.records[i] = {
                             static_cast<std::uint32_t>(o.root_hits),
                             static_cast<std::uint8_t>(o.truncated ? 1 : 0)};
                         Partial& p = parts[slot];
                         p.hits += o.root_hits;
                         p.sq += o.root_hits * o.root_hits;
                         p.act += o.activated_frogs;
                         p.trunc += o.truncated ? 1 : 0;
                     });
    for (const Partial& p : parts) {
        stats.total_root_hits += p.hits;
        stats.sum_sq_root_hits += p.sq;
        stats.total_activated += p.act;
        stats.truncated_episodes += p.trunc;
    }
    return stats;
}

HitProbEstimate estimate_hit_prob(int start_depth, const ModelConfig& config) {
    config.validate();
    if (start_depth != 1 && start_depth != 2)
        throw std::invalid_argument("estimate_hit_prob: start_depth must be 1 or 2");

    NodeAddress start;
    for (int i = 0; i < start_depth; ++i)
        start.digits.push_back(0);
    const std::uint64_t frog_key = address_hash(start);
    const auto target_depth = static_cast<std::size_t>(start_depth - 1);

    struct Partial {
        std::uint64_t hits = 0, trunc = 0;
    };
    std::vector<Partial> parts(std::max(1, config.threads));
    for_each_episode(
        config.episodes, config.threads, [&](std::uint64_t i, int slot) {
            StreamRng rng(stream_key(config.master_seed, i, frog_key));
            // Only the depth profile matters: the first exit from the start
            // vertex's subtree necessarily lands on its parent.
            std::size_t depth = start.digits.size();
            for (std::uint32_t step = 0; step < config.step_cap; ++step) {
                const int down = child_count(depth);
                const int total = (depth == 0 ? 0 : 1) + down;
                const auto pick =
                    rng.bounded(static_cast<std::uint32_t>(total));
                if (depth > 0 && pick == 0) {
                    --depth;
                    if (depth == target_depth) {
                        ++parts[slot].hits;
                        return;
                    }
                } else {
                    ++depth;
                    if (depth > config.depth_cap)
                        return; // killed; one-sided failure
                }
            }
            ++parts[slot].trunc; // undecided at the step cap
        });
    HitProbEstimate est;
    est.start_depth = start_depth;
    est.episodes = config.episodes;
    for (const Partial& p : parts) {
        est.hits += p.hits;
        est.truncated += p.trunc;
    }
    est.estimate = static_cast<double>(est.hits) / static_cast<double>(est.episodes);
    est.stderr = std::sqrt(est.estimate * (1.0 - est.estimate) /
                           static_cast<double>(est.episodes));
    return est;
}

PhiTransitionStats estimate_phi_transitions(const ModelConfig& config) {
    config.validate();
    struct Partial {
        FreqTally fo, fe, co, ce;
        std::uint64_t trunc = 0;
    };
    std::vector<Partial> parts(std::max(1, config.threads));

    for_each_episode(config.episodes, config.threads, [&](std::uint64_t i, int slot) {
        const int start_depth = 1 + static_cast<int>(i % 4);
        NodeAddress start;
        for (int d = 0; d < start_depth; ++d)
            start.digits.push_back(0);
        TreeArena arena;
        StreamRng rng(stream_key(config.master_seed, i, address_hash(start)));
        const WalkResult w =
            upsilon_walk(arena, start, rng, config.depth_cap, config.step_cap);
        Partial& p = parts[slot];
        if (w.cut) {
            ++p.trunc; // erasure ambiguous at the horizon; excluded
            return;
        }
        const Erasure e = loop_erase(w.path);
        const auto& phi = e.phi;
        if (phi.size() < 2)
            return;
        const bool first_up = arena.depth(phi[1]) < arena.depth(phi[0]);
        FreqTally& fs = (start_depth % 2 == 1) ? p.fo : p.fe;
        ++fs.denom;
        if (first_up) ++fs.numer;
        for (std::size_t k = 1; k + 1 < phi.size(); ++k) {
            const bool arrived_up = arena.depth(phi[k]) < arena.depth(phi[k - 1]);
            if (!arrived_up || phi[k] == TreeArena::kRoot)
                continue;
            FreqTally& ct = (arena.depth(phi[k]) % 2 == 1) ? p.co : p.ce;
            ++ct.denom;
            if (arena.depth(phi[k + 1]) < arena.depth(phi[k]))
                ++ct.numer;
        }
    });

    PhiTransitionStats s;
    s.episodes = config.episodes;
    for (const Partial& p : parts) {
        s.first_step_odd.numer += p.fo.numer;
        s.first_step_odd.denom += p.fo.denom;
        s.first_step_even.numer += p.fe.numer;
        s.first_step_even.denom += p.fe.denom;
        s.chain_odd.numer += p.co.numer;
        s.chain_odd.denom += p.co.denom;
        s.chain_even.numer += p.ce.numer;
        s.chain_even.denom += p.ce.denom;
        s.truncated += p.trunc;
    }
    return s;
}

namespace {

// Replay of the recorded loop-erased paths as a frog model, optionally with
// the self-similar quotas. Paths are looked up by origin vertex; every
// vertex the replay can wake was woken in the walk layer, so its path
// exists.
std::uint64_t replay_layer(TreeArena& arena,
                           const std::vector<const std::vector<VertexId>*>& phi_of,
                           bool selfsimilar) {
    struct RFrog {
        const std::vector<VertexId>* path;
        std::size_t idx = 0;
        bool moving = true;
    };
    std::vector<RFrog> frogs;
    std::vector<std::uint32_t> active, pending;
    std::vector<std::uint32_t> native(arena.size(), kAsleep);
    std::vector<std::uint32_t> activator(arena.size(), kAsleep);
    std::vector<std::uint8_t> down_count(arena.size(), 0);
    std::vector<std::uint32_t> first_passer(arena.size(), kAsleep);

    auto ensure = [&] {
        if (native.size() < arena.size()) {
            native.resize(arena.size(), kAsleep);
            activator.resize(arena.size(), kAsleep);
            down_count.resize(arena.size(), 0);
            first_passer.resize(arena.size(), kAsleep);
        }
    };

    std::uint64_t hits = 0;

    auto spawn = [&](VertexId origin, std::uint32_t by) {
        const auto id = static_cast<std::uint32_t>(frogs.size());
        frogs.push_back(RFrog{phi_of[origin], 0, true});
        if (origin != TreeArena::kRoot) {
            native[origin] = id;
            activator[origin] = by;
        }
        pending.push_back(id);
    };
    spawn(TreeArena::kRoot, kAsleep);

    for (;;) {
        for (std::uint32_t id : pending)
            active.push_back(id);
        pending.clear();
        if (active.empty())
            break;

        const std::size_t snapshot = active.size();
        for (std::size_t k = 0; k < snapshot; ++k) {
            const std::uint32_t id = active[k];
            RFrog& f = frogs[id];
            if (!f.moving) continue;
            if (f.idx + 1 >= f.path->size()) {
                f.moving = false;
                continue;
            }
            const VertexId cur = (*f.path)[f.idx];
            const VertexId dest = (*f.path)[f.idx + 1];
            bool stopped = false;
            if (selfsimilar && arena.parent(dest) == cur) {
                const std::uint8_t cnt = down_count[dest];
                if (cnt == 0) {
                    down_count[dest] = 1;
                    first_passer[dest] = id;
                } else if (arena.depth(cur) % 2 == 0 || cnt >= 2) {
                    stopped = true;
                } else {
                    const std::uint32_t nat = native[cur];
                    const std::uint32_t act = activator[cur];
                    const std::uint32_t first = first_passer[dest];
                    const bool designated = nat != kAsleep && act != kAsleep &&
                        ((first == nat && id == act) ||
                         (first == act && id == nat));
                    const VertexId sib = arena.sibling(dest);
                    ensure();
                    if (designated && native[sib] == kAsleep)
                        down_count[dest] = 2;
                    else
                        stopped = true;
                }
            }
            ++f.idx;
            if (dest == TreeArena::kRoot) {
                ++hits;
                stopped = true;
            } else if (native[dest] == kAsleep && phi_of[dest] != nullptr) {
                spawn(dest, id); // may reallocate frogs; f is dead now
            }
            if (stopped)
                frogs[id].moving = false;
        }
        active.erase(std::remove_if(active.begin(), active.end(),
                                    [&frogs](std::uint32_t id) {
                                        return !frogs[id].moving;
                                    }),
                     active.end());
    }
    return hits;
}

} // namespace

CoupledEpisode run_coupled_episode(const ModelConfig& config,
                                   std::uint64_t episode_index, bool keep_paths) {
    config.validate();
    SchedKind kind;
    kind.upsilon = true;
    kind.record_paths = true;
    Scheduler sched(config, episode_index, kind);
    SchedResult walk_layer = sched.run();
    TreeArena& arena = sched.arena();

    CoupledEpisode out;
    out.Z = walk_layer.root_hits;
    out.activated_walk = walk_layer.activated;
    out.truncated = walk_layer.cut_by_tick_cap;

    std::vector<Erasure> erasures(walk_layer.paths.size());
    std::vector<const std::vector<VertexId>*> phi_of(arena.size(), nullptr);
    for (std::size_t i = 0; i < walk_layer.paths.size(); ++i) {
        erasures[i] = loop_erase(walk_layer.paths[i]);
        if (!is_subsequence(erasures[i].phi, walk_layer.paths[i]))
            out.subset_ok = false;
        phi_of[walk_layer.origins[i]] = &erasures[i].phi;
    }

    out.Vp = replay_layer(arena, phi_of, /*selfsimilar=*/false);
    out.V = replay_layer(arena, phi_of, /*selfsimilar=*/true);
    out.dominance_ok = out.V <= out.Vp && out.Vp <= out.Z;

    if (keep_paths) {
        out.paths.reserve(walk_layer.paths.size());
        for (std::size_t i = 0; i < walk_layer.paths.size(); ++i) {
            FrogPaths fp;
            fp.origin = arena.address(walk_layer.origins[i]);
            for (VertexId v : walk_layer.paths[i])
                fp.walk.push_back(arena.address(v));
            for (VertexId v : erasures[i].phi)
                fp.erased.push_back(arena.address(v));
            fp.t_index = erasures[i].t_index;
            fp.s_index = erasures[i].s_index;
            out.paths.push_back(std::move(fp));
        }
    }
    return out;
}

CoupledBatchStats run_coupled_batch(const ModelConfig& config) {
    config.validate();
    struct Partial {
        std::uint64_t trunc = 0, subset = 0, dom = 0, z = 0, vp = 0, v = 0;
    };
    std::vector<Partial> parts(std::max(1, config.threads));
    for_each_episode(config.episodes, config.threads,
                     [&](std::uint64_t i, int slot) {
                         const CoupledEpisode e = run_coupled_episode(config, i);
                         Partial& p = parts[slot];
                         p.z += e.Z;
                         p.vp += e.Vp;
                         p.v += e.V;
                         if (e.truncated) {
                             ++p.trunc;
                             return; // excluded from the strict assertions
                         }
                         if (!e.subset_ok) ++p.subset;
                         if (!e.dominance_ok) ++p.dom;
                     });
    CoupledBatchStats s;
    s.episodes = config.episodes;
    for (const Partial& p : parts) {
        s.truncated += p.trunc;
        s.subset_violations += p.subset;
        s.dominance_violations += p.dom;
        s.sum_Z += p.z;
        s.sum_Vp += p.vp;
        s.sum_V += p.v;
    }
    return s;
}

void write_episode_csv(const std::string& path, Variant variant,
                       const std::vector<EpisodeRecord>& records) {
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("write_episode_csv: cannot open " + path);
    f << "episode_index,variant,root_hits,truncated\n";
    const std::string vn = variant_name(variant);
    for (std::size_t i = 0; i < records.size(); ++i)
        f << i << ',' << vn << ',' << records[i].root_hits << ','
          << static_cast<int>(records[i].truncated) << '\n';
    if (!f)
        throw std::runtime_error("write_episode_csv: write failed for " + path);
}

} // namespace frogcert
