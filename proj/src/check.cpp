#include "ifc/check.hpp"

#include <algorithm>
#include <stdexcept>

namespace ifc {

// defined in heap.cpp to keep this translation unit free of the heap types
ObservedRun heapObserveRun(const Configuration& c, const SchedulerPolicy& alpha,
                           const StepOptions& opts, const Label& l, int budget);

namespace {

constexpr std::uint64_t kSizeCap = 20000;

NIVerdict compareRuns(const ObservedRun& a, const ObservedRun& b) {
    NIVerdict v;
    v.endA = a.end;
    v.endB = b.end;
    std::size_t n = std::max(a.sigs.size(), b.sigs.size());
    for (std::size_t i = 0; i < n; ++i) {
        bool haveA = i < a.sigs.size();
        bool haveB = i < b.sigs.size();
        if ((!haveA && !a.decisive()) || (!haveB && !b.decisive())) {
            v.outcome = Outcome::Inconclusive;
            return v;
        }
        const std::string& sa = haveA ? a.sigs[i] : a.sigs.back();
        const std::string& sb = haveB ? b.sigs[i] : b.sigs.back();
        if (sa != sb) {
            v.outcome = Outcome::Violation;
            v.index = static_cast<int>(i);
            v.witnessA = sa;
            v.witnessB = sb;
            v.traceA = a.sigs;
            v.traceB = b.sigs;
            return v;
        }
    }
    v.outcome = (a.decisive() && b.decisive()) ? Outcome::Pass : Outcome::Inconclusive;
    return v;
}

}  // namespace

bool AbstractEngineTraits::oversize(const Config& c) {
    std::uint64_t total = 0;
    for (const auto& t : c.tasks) {
        total += treeSize(t.expr, kSizeCap);
        if (total >= kSizeCap) return true;
    }
    return false;
}

NIVerdict compareTsni(const ObservedRun& a, const ObservedRun& b) { return compareRuns(a, b); }

NIVerdict compareTini(const ObservedRun& a, const ObservedRun& b) {
    NIVerdict v;
    v.endA = a.end;
    v.endB = b.end;
    if (a.end != RunEndKind::Terminal || b.end != RunEndKind::Terminal) {
        v.outcome = Outcome::Inconclusive;  // the property says nothing here
        return v;
    }
    if (a.sigs.back() == b.sigs.back()) {
        v.outcome = Outcome::Pass;
    } else {
        v.outcome = Outcome::Violation;
        v.index = static_cast<int>(std::max(a.sigs.size(), b.sigs.size())) - 1;
        v.witnessA = a.sigs.back();
        v.witnessB = b.sigs.back();
        v.traceA = a.sigs;
        v.traceB = b.sigs;
    }
    return v;
}

NIVerdict checkTsni(const Configuration& c1, const Configuration& c2, const Label& l,
                    const SchedulerPolicy& alpha, const StepOptions& opts, int budget) {
    if (!lEquiv(c1, c2, l)) {
        throw std::invalid_argument("checkTsni requires l-equivalent configurations");
    }
    ObservedRun a = observeRun<AbstractEngineTraits>(c1, alpha, opts, l, budget);
    ObservedRun b = observeRun<AbstractEngineTraits>(c2, alpha, opts, l, budget);
    return compareTsni(a, b);
}

NIVerdict checkTini(const Configuration& c1, const Configuration& c2, const Label& l,
                    const SchedulerPolicy& alpha, const StepOptions& opts, int budget) {
    if (!lEquiv(c1, c2, l)) {
        throw std::invalid_argument("checkTini requires l-equivalent configurations");
    }
    ObservedRun a = observeRun<AbstractEngineTraits>(c1, alpha, opts, l, budget);
    ObservedRun b = observeRun<AbstractEngineTraits>(c2, alpha, opts, l, budget);
    return compareTini(a, b);
}

std::uint64_t pairSeed(std::uint64_t suiteSeed, int index) {
    // splitmix64 over (seed, index) so pairs are independent and replayable
    std::uint64_t z = suiteSeed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

SuiteStats runSuite(bool tini, int pairs, std::uint64_t seed, const Label& l,
                    const SchedulerPolicy& alpha, const StepOptions& opts, int budget,
                    const GenParams& gen, bool concreteEngine) {
    SuiteStats stats;
    stats.pairs = pairs;
    for (int i = 0; i < pairs; ++i) {
        std::uint64_t s = pairSeed(seed, i);
        auto [c1, c2] = genEquivPair(s, l, gen);
        ObservedRun a, b;
        if (concreteEngine) {
            a = heapObserveRun(c1, alpha, opts, l, budget);
            b = heapObserveRun(c2, alpha, opts, l, budget);
        } else {
            a = observeRun<AbstractEngineTraits>(c1, alpha, opts, l, budget);
            b = observeRun<AbstractEngineTraits>(c2, alpha, opts, l, budget);
        }
        if (a.end == RunEndKind::Terminal && b.end == RunEndKind::Terminal) {
            stats.mutuallyTerminating++;
        }
        NIVerdict v = tini ? compareTini(a, b) : compareTsni(a, b);
        switch (v.outcome) {
            case Outcome::Pass: stats.passes++; break;
            case Outcome::Violation:
                stats.violations++;
                stats.violatingSeeds.push_back(s);
                break;
            case Outcome::Inconclusive: stats.inconclusive++; break;
        }
    }
    return stats;
}

}  // namespace

SuiteStats runTsniSuite(int pairs, std::uint64_t seed, const Label& l,
                        const SchedulerPolicy& alpha, const StepOptions& opts, int budget,
                        const GenParams& gen, bool concreteEngine) {
    return runSuite(false, pairs, seed, l, alpha, opts, budget, gen, concreteEngine);
}

SuiteStats runTiniSuite(int pairs, std::uint64_t seed, const Label& l,
                        const SchedulerPolicy& alpha, const StepOptions& opts, int budget,
                        const GenParams& gen, bool concreteEngine) {
    return runSuite(true, pairs, seed, l, alpha, opts, budget, gen, concreteEngine);
}

}  // namespace ifc
