#pragma once

// Forward, past-sensitive forward, reverse and forward-reverse bisimilarity
// by signature-based partition refinement.
//
// A state's signature under a variant is the set of (direction, observation,
// block) triples over its outgoing (FB, FBps, FRB) and/or incoming (RB, FRB)
// transitions.  Observations are the action of the proof term, paired with
// the ready set for encoded terms; proof terms themselves are never compared.

#include "brs_process.hpp"
#include "core_terms.hpp"
#include "proved_lts.hpp"
#include "syntax.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace revexp {

enum class Variant { FB, FBps, RB, FRB };

inline const char* to_string(Variant v)
{
    switch (v) {
    case Variant::FB:
        return "FB";
    case Variant::FBps:
        return "FBps";
    case Variant::RB:
        return "RB";
    case Variant::FRB:
        return "FRB";
    }
    return "?";
}

inline bool uses_forward(Variant v) { return v != Variant::RB; }
inline bool uses_backward(Variant v) { return v == Variant::RB || v == Variant::FRB; }

// Block index per state; blocks are numbered by first occurrence.
using Partition = std::vector<std::size_t>;

struct Counterexample {
    std::string left, right; // the two states being compared
    std::string direction;   // "forward", "backward" or "initiality"
    std::string detail;      // which observation could not be matched
    std::size_t round = 0;   // refinement round that separated them
};

struct Verdict {
    bool equivalent = false;
    // Blocks of the coarsest stable partition (rendered states), when
    // equivalent.
    std::vector<std::vector<std::string>> witness;
    std::optional<Counterexample> counterexample;
};

// Observation graph: the shape refinement works on.
struct ObsGraph {
    struct Edge {
        std::size_t src, obs, dst;
    };
    std::vector<bool> initial;
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> out, in;
    std::vector<std::string> obs_names;
    std::unordered_map<std::string, std::size_t> obs_index;

    std::size_t size() const noexcept { return initial.size(); }

    std::size_t add_state(bool is_initial)
    {
        initial.push_back(is_initial);
        out.emplace_back();
        in.emplace_back();
        return initial.size() - 1;
    }

    std::size_t observation(const std::string& name)
    {
        auto [it, fresh] = obs_index.emplace(name, obs_names.size());
        if (fresh)
            obs_names.push_back(name);
        return it->second;
    }

    void add_edge(std::size_t s, std::size_t o, std::size_t d)
    {
        out[s].push_back(edges.size());
        in[d].push_back(edges.size());
        edges.push_back({s, o, d});
    }
};

inline std::string observation_name(const ProofTerm& t) { return act(t); }
inline std::string observation_name(const BrsLabel& l) { return act(l.proof) + "," + render_set(l.ready); }

// Appends an LTS to the graph; returns the graph index of its state 0.
template <class Term, class Label, class Hash>
std::size_t append_lts(ObsGraph& g, const BasicLts<Term, Label, Hash>& lts)
{
    std::size_t base = g.size();
    for (StateId s = 0; s < lts.size(); ++s)
        g.add_state(lts.initial_flags[s]);
    for (const auto& t : lts.transitions)
        g.add_edge(base + t.src, g.observation(observation_name(t.label)), base + t.dst);
    return base;
}

namespace detail {

using SigEntry = std::tuple<std::uint8_t, std::size_t, std::size_t>; // direction, observation, block

inline std::vector<SigEntry> signature(const ObsGraph& g, const Partition& part, std::size_t s, Variant v)
{
    std::vector<SigEntry> sig;
    if (uses_forward(v))
        for (auto e : g.out[s])
            sig.emplace_back(0, g.edges[e].obs, part[g.edges[e].dst]);
    if (uses_backward(v))
        for (auto e : g.in[s])
            sig.emplace_back(1, g.edges[e].obs, part[g.edges[e].src]);
    std::sort(sig.begin(), sig.end());
    sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
    return sig;
}

inline Partition seed_partition(const ObsGraph& g, Variant v)
{
    Partition p(g.size(), 0);
    if (v == Variant::FBps) {
        std::optional<bool> first;
        for (std::size_t s = 0; s < g.size(); ++s) {
            if (!first)
                first = g.initial[s];
            p[s] = g.initial[s] == *first ? 0 : 1;
        }
    }
    return p;
}

inline std::size_t block_count(const Partition& p)
{
    std::size_t n = 0;
    for (auto b : p)
        n = std::max(n, b + 1);
    return n;
}

// One refinement round; returns the refined partition.
inline Partition refine_once(const ObsGraph& g, const Partition& part, Variant v)
{
    std::map<std::pair<std::size_t, std::vector<SigEntry>>, std::size_t> ids;
    Partition next(g.size());
    for (std::size_t s = 0; s < g.size(); ++s) {
        auto key = std::make_pair(part[s], signature(g, part, s, v));
        auto [it, fresh] = ids.emplace(std::move(key), ids.size());
        next[s] = it->second;
    }
    return next;
}

} // namespace detail

// Coarsest partition stable under the variant's transfer clauses.  When a
// pair of states is being watched, the round and direction of the split that
// separates them is reported through `split`.
inline Partition refine(const ObsGraph& g, Variant v, std::optional<std::pair<std::size_t, std::size_t>> watch = {},
                        Counterexample* split = nullptr)
{
    Partition part = detail::seed_partition(g, v);
    if (watch && split && part[watch->first] != part[watch->second]) {
        split->direction = "initiality";
        split->detail = "one state is initial and the other is not";
        split->round = 0;
        watch.reset();
    }
    std::size_t blocks = detail::block_count(part);
    for (std::size_t round = 1;; ++round) {
        Partition next = detail::refine_once(g, part, v);
        if (watch && split && next[watch->first] != next[watch->second]) {
            const std::size_t x = watch->first, y = watch->second;
            split->round = round;
            auto fwd = [&](std::size_t s) { return detail::signature(g, part, s, Variant::FB); };
            auto bwd = [&](std::size_t s) { return detail::signature(g, part, s, Variant::RB); };
            bool fwd_differs = uses_forward(v) && fwd(x) != fwd(y);
            split->direction = fwd_differs ? "forward" : "backward";
            auto sx = fwd_differs ? fwd(x) : bwd(x);
            auto sy = fwd_differs ? fwd(y) : bwd(y);
            std::vector<detail::SigEntry> only;
            std::set_symmetric_difference(sx.begin(), sx.end(), sy.begin(), sy.end(), std::back_inserter(only));
            if (!only.empty()) {
                bool on_left = std::binary_search(sx.begin(), sx.end(), only.front());
                split->detail = std::string(on_left ? "left" : "right") + " state has an " +
                                (fwd_differs ? "outgoing" : "incoming") + " '" +
                                g.obs_names[std::get<1>(only.front())] + "' transition the other cannot match";
            }
            watch.reset();
        }
        std::size_t nb = detail::block_count(next);
        part = std::move(next);
        if (nb == blocks)
            break;
        blocks = nb;
    }
    return part;
}

// Checks that, read as a relation, the partition satisfies the transfer
// clauses of the variant on every pair of states sharing a block.
inline bool is_stable(const ObsGraph& g, const Partition& part, Variant v)
{
    std::unordered_map<std::size_t, std::size_t> rep;
    for (std::size_t s = 0; s < g.size(); ++s) {
        auto [it, fresh] = rep.emplace(part[s], s);
        if (fresh)
            continue;
        std::size_t r = it->second;
        if (v == Variant::FBps && g.initial[r] != g.initial[s])
            return false;
        if (detail::signature(g, part, r, v) != detail::signature(g, part, s, v))
            return false;
    }
    return true;
}

template <class Term, class Label, class Hash>
Partition largest_bisimulation(const BasicLts<Term, Label, Hash>& lts, Variant v)
{
    ObsGraph g;
    append_lts(g, lts);
    return refine(g, v);
}

namespace detail {

template <class Term, class LtsT>
Verdict check_in_union(const Term& x1, const LtsT& l1, const Term& x2, const LtsT& l2, Variant v, bool witness)
{
    auto s1 = l1.find(x1);
    auto s2 = l2.find(x2);
    if (!s1)
        throw NotReachableError("'" + render(x1) + "' is not reachable");
    if (!s2)
        throw NotReachableError("'" + render(x2) + "' is not reachable");
    ObsGraph g;
    std::size_t b1 = append_lts(g, l1);
    std::size_t b2 = append_lts(g, l2);
    std::size_t i1 = b1 + *s1, i2 = b2 + *s2;
    Counterexample cx;
    Partition part = refine(g, v, std::make_pair(i1, i2), &cx);
    Verdict verdict;
    verdict.equivalent = part[i1] == part[i2];
    if (verdict.equivalent) {
        if (witness) {
            verdict.witness.resize(detail::block_count(part));
            for (StateId s = 0; s < l1.size(); ++s)
                verdict.witness[part[b1 + s]].push_back("L:" + render(l1.states[s]));
            for (StateId s = 0; s < l2.size(); ++s)
                verdict.witness[part[b2 + s]].push_back("R:" + render(l2.states[s]));
        }
    } else {
        cx.left = render(x1);
        cx.right = render(x2);
        verdict.counterexample = cx;
    }
    return verdict;
}

} // namespace detail

// Decides p1 ~v p2 over Reach(to_initial(p1)) + Reach(to_initial(p2)).
inline Verdict check(const Process& p1, const Process& p2, Variant v, bool witness = true,
                     std::size_t cap = default_state_cap())
{
    if (!is_wellformed(p1))
        throw NotReachableError("'" + render(p1) + "' is not well-formed");
    if (!is_wellformed(p2))
        throw NotReachableError("'" + render(p2) + "' is not well-formed");
    Lts l1 = build_lts(to_initial(p1), cap);
    Lts l2 = build_lts(to_initial(p2), cap);
    return detail::check_in_union(p1, l1, p2, l2, v, witness);
}

// The same over the transition systems of encoded terms, observing
// (action, ready set) pairs.
inline Verdict check_brs(const BrsProcess& u1, const BrsProcess& u2, Variant v, bool witness = true,
                         std::size_t cap = default_state_cap())
{
    BrsLts l1 = build_brs_lts(to_initial(u1), cap);
    BrsLts l2 = build_brs_lts(to_initial(u2), cap);
    return detail::check_in_union(u1, l1, u2, l2, v, witness);
}

// Compares the two transition systems as wholes: the processes must be
// related and, in addition, every state reachable in either system must be
// related to some state of the other.  This is the sense in which two
// pictured systems "are" or "are not" bisimilar; check() relates the given
// states only, so e.g. any two initial processes are reverse bisimilar.
inline bool check_systems(const Process& p1, const Process& p2, Variant v, std::size_t cap = default_state_cap())
{
    Lts l1 = build_lts(to_initial(p1), cap);
    Lts l2 = build_lts(to_initial(p2), cap);
    auto s1 = l1.find(p1), s2 = l2.find(p2);
    if (!s1)
        throw NotReachableError("'" + render(p1) + "' is not reachable");
    if (!s2)
        throw NotReachableError("'" + render(p2) + "' is not reachable");
    ObsGraph g;
    std::size_t b1 = append_lts(g, l1);
    std::size_t b2 = append_lts(g, l2);
    Partition part = refine(g, v);
    if (part[b1 + *s1] != part[b2 + *s2])
        return false;
    std::set<std::size_t> blocks1, blocks2;
    for (StateId s = 0; s < l1.size(); ++s)
        blocks1.insert(part[b1 + s]);
    for (StateId s = 0; s < l2.size(); ++s)
        blocks2.insert(part[b2 + s]);
    return blocks1 == blocks2;
}

// Ready-set equalities every bisimilar pair must satisfy: forward ready sets
// for the forward variants, backward ready sets for the reverse ones.
inline bool necessary_check(const Process& p1, const Process& p2, Variant v)
{
    if (uses_forward(v) && frs(p1) != frs(p2))
        return false;
    if (uses_backward(v) && brs(p1) != brs(p2))
        return false;
    return true;
}

} // namespace revexp
