#pragma once

#include <cstdint>
#include <utility>

#include "ifc/config.hpp"

namespace ifc {

// Deterministic RNG with implementation-independent output, so seeds
// reproduce byte-identical traces everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next();
    // Uniform-ish value in [0, n); n must be positive.
    int below(int n);
    bool chance(double p);  // true with probability ~p

  private:
    std::uint64_t state_;
};

struct GenParams {
    int maxTasks = 4;
    int maxDepth = 6;
    bool extensions = false;   // labeled values / labeled references in terms
    bool clearance = false;    // assign non-top clearances and clearance ops
    double wildShare = 0.18;   // weight of possibly-stuck or divergent forms
    double seedHighMessages = 0.5;  // chance a config starts with secret mail
    LatticeKind lattice = LatticeKind::TwoPoint;
};

// A random reachable-shaped configuration: no raw addresses or internal
// value forms appear in the generated terms; those only arise by execution.
Configuration genConfig(Rng& rng, const GenParams& params);

// A pair of configurations that are l-equivalent by construction: the second
// is the first with every region the observer cannot see (tasks and messages
// above l) independently regenerated.
std::pair<Configuration, Configuration> genEquivPair(std::uint64_t seed, const Label& l,
                                                     const GenParams& params);

}  // namespace ifc
