#pragma once

// Agreement between the axiomatic deciders and the bisimilarity checkers over
// whole populations of processes.
//
// Rather than checking all n^2 pairs one at a time, every process's LTS is
// added to one graph, the graph is refined once, and the resulting partition
// is compared with the partition induced by canonical forms.  The deciders
// agree with the checker on every pair iff the two partitions coincide.

#include "bisimilarity.hpp"
#include "equational.hpp"

#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace revexp {

inline Variant matching_variant(Theory t)
{
    switch (t) {
    case Theory::F:
        return Variant::FBps;
    case Theory::R:
        return Variant::RB;
    case Theory::FR:
        return Variant::FRB;
    }
    return Variant::FB;
}

struct AgreementReport {
    Theory theory = Theory::F;
    Variant variant = Variant::FBps;
    std::size_t processes = 0;
    std::size_t checker_classes = 0;
    std::size_t theory_classes = 0;
    // Checker classes whose members get different canonical forms
    // (bisimilar but not provably equal), and canonical forms shared by
    // different checker classes (provably equal but not bisimilar).
    std::size_t incomplete = 0;
    std::size_t unsound = 0;
    std::string example; // one offending pair, if any

    bool ok() const noexcept { return incomplete == 0 && unsound == 0; }
};

// Processes must be reachable.
inline AgreementReport agreement(const std::vector<Process>& ps, Theory theory,
                                 PastOrder past = PastOrder::AllHistories)
{
    AgreementReport r;
    r.theory = theory;
    r.variant = matching_variant(theory);
    r.processes = ps.size();

    ObsGraph g;
    std::unordered_map<Process, std::size_t, ProcessHash> node;
    std::unordered_set<Process, ProcessHash> roots;
    for (const auto& p : ps) {
        Process root = to_initial(p);
        if (!roots.insert(root).second)
            continue;
        Lts lts = build_lts(root);
        std::size_t base = append_lts(g, lts);
        for (StateId s = 0; s < lts.size(); ++s)
            node.emplace(lts.states[s], base + s);
    }
    Partition part = refine(g, r.variant);

    std::map<std::size_t, std::map<std::string, std::size_t>> by_block; // block -> form -> process index
    std::map<std::string, std::map<std::size_t, std::size_t>> by_form;  // form -> block -> process index
    for (std::size_t i = 0; i < ps.size(); ++i) {
        std::size_t b = part[node.at(ps[i])];
        std::string f = canonical_form(ps[i], theory, past);
        by_block[b].emplace(f, i);
        by_form[f].emplace(b, i);
    }
    r.checker_classes = by_block.size();
    r.theory_classes = by_form.size();
    for (const auto& [b, forms] : by_block)
        if (forms.size() > 1) {
            if (r.example.empty())
                r.example = "bisimilar but not provably equal: " + render(ps[forms.begin()->second]) + "  vs  " +
                            render(ps[std::next(forms.begin())->second]);
            ++r.incomplete;
        }
    for (const auto& [f, blocks] : by_form)
        if (blocks.size() > 1) {
            if (r.example.empty())
                r.example = "provably equal but not bisimilar: " + render(ps[blocks.begin()->second]) + "  vs  " +
                            render(ps[std::next(blocks.begin())->second]);
            ++r.unsound;
        }
    return r;
}

struct CorrespondenceSummary {
    std::size_t roots = 0, states = 0, transitions = 0, violations = 0;
    std::string first_violation;
};

// verify_correspondence over every initial process among `ps`.
inline CorrespondenceSummary correspondence_suite(const std::vector<Process>& ps)
{
    CorrespondenceSummary s;
    for (const auto& p : ps) {
        if (!p.initial())
            continue;
        auto rep = verify_correspondence(p);
        ++s.roots;
        s.states += rep.states;
        s.transitions += rep.transitions;
        if (!rep.ok) {
            if (s.first_violation.empty())
                s.first_violation = render(p) + ": " + rep.violation;
            ++s.violations;
        }
    }
    return s;
}

} // namespace revexp
