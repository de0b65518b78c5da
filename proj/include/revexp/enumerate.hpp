#pragma once

// Exhaustive generation of small processes for differential testing.
//
// Initial terms are generated by syntactic depth (0 for 0, one more than the
// deepest operand otherwise).  Operands of + and of parallel composition are
// never 0, and sync sets range over all subsets of the alphabet.  Reachable
// processes are then collected by exploring each initial term.

#include "core_terms.hpp"
#include "proved_lts.hpp"

#include <unordered_set>
#include <vector>

namespace revexp {

inline std::vector<SyncSet> subsets(const std::vector<Action>& alphabet)
{
    std::vector<SyncSet> out;
    std::size_t n = alphabet.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        SyncSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i))
                s.insert(alphabet[i]);
        out.push_back(std::move(s));
    }
    return out;
}

// All initial processes of depth <= max_depth, by increasing depth.
inline std::vector<Process> initial_terms(const std::vector<Action>& alphabet, std::size_t max_depth)
{
    std::vector<Process> all{Process::nil()};
    std::size_t prev_end = 0; // terms of depth < d occupy [0, prev_end) after each round
    auto syncs = subsets(alphabet);
    for (std::size_t d = 1; d <= max_depth; ++d) {
        std::size_t below = all.size(); // terms of depth <= d-1
        std::vector<Process> fresh;
        // At least one operand must have depth exactly d-1.
        auto exact = [&](std::size_t i) { return i >= prev_end; };
        for (const auto& a : alphabet)
            for (std::size_t i = prev_end; i < below; ++i)
                fresh.push_back(Process::prefix(a, false, all[i]));
        for (std::size_t i = 1; i < below; ++i)
            for (std::size_t j = 1; j < below; ++j) {
                if (!exact(i) && !exact(j))
                    continue;
                fresh.push_back(Process::choice(all[i], all[j]));
            }
        for (const auto& L : syncs)
            for (std::size_t i = 1; i < below; ++i)
                for (std::size_t j = 1; j < below; ++j) {
                    if (!exact(i) && !exact(j))
                        continue;
                    fresh.push_back(Process::par(L, all[i], all[j]));
                }
        prev_end = below;
        all.insert(all.end(), fresh.begin(), fresh.end());
    }
    return all;
}

// Every process reachable from an initial term of depth <= max_depth whose
// size is at most max_size, without duplicates, in a deterministic order.
inline std::vector<Process> enumerate(std::size_t max_size, const std::vector<Action>& alphabet,
                                      std::size_t max_depth = 3)
{
    std::vector<Process> out;
    std::unordered_set<Process, ProcessHash> seen;
    for (const auto& root : initial_terms(alphabet, max_depth)) {
        if (size(root) > max_size)
            continue;
        if (seen.count(root))
            continue;
        Lts lts = build_lts(root);
        for (const auto& s : lts.states)
            if (seen.insert(s).second)
                out.push_back(s);
    }
    return out;
}

} // namespace revexp
