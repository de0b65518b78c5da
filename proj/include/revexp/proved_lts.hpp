#pragma once

// Proved operational semantics and finite transition systems.
//
// forward_steps implements the seven rules for processes (Act_f, Act_p,
// Cho_l, Cho_r, Par_l, Par_r, Syn); brs_forward_steps the four rules for
// encoded terms, whose labels also carry the ready set stored in the fired
// prefix.  There is a single transition relation: going backward means
// following a transition from its target to its source.

#include "brs_process.hpp"
#include "core_terms.hpp"

#include <cstdlib>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace revexp {

struct StateBudgetError : Error {
    using Error::Error;
};

constexpr std::size_t default_state_cap_value = 1000000;

// REVEXP_STATE_CAP overrides the default budget of 10^6 states.
inline std::size_t default_state_cap()
{
    if (const char* s = std::getenv("REVEXP_STATE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return default_state_cap_value;
}

using Step = std::pair<ProofTerm, Process>;

struct BrsLabel {
    ProofTerm proof;
    ActionSet ready;
    friend bool operator==(const BrsLabel& x, const BrsLabel& y) { return x.proof == y.proof && x.ready == y.ready; }
};

using BrsStep = std::pair<BrsLabel, BrsProcess>;

inline void forward_steps_into(const Process& p, std::vector<Step>& out)
{
    switch (p.kind()) {
    case Process::Kind::Nil:
        return;
    case Process::Kind::Prefix:
        if (!p.executed()) {
            if (p.cont().initial())
                out.emplace_back(ProofTerm::act(p.action()), Process::prefix(p.action(), true, p.cont()));
            return;
        }
        {
            std::vector<Step> inner;
            forward_steps_into(p.cont(), inner);
            for (auto& [t, q] : inner)
                out.emplace_back(ProofTerm::dot(t), Process::prefix(p.action(), true, q));
        }
        return;
    case Process::Kind::Choice: {
        if (p.right().initial()) {
            std::vector<Step> inner;
            forward_steps_into(p.left(), inner);
            for (auto& [t, q] : inner)
                out.emplace_back(ProofTerm::plus_l(t), Process::choice(q, p.right()));
        }
        if (p.left().initial()) {
            std::vector<Step> inner;
            forward_steps_into(p.right(), inner);
            for (auto& [t, q] : inner)
                out.emplace_back(ProofTerm::plus_r(t), Process::choice(p.left(), q));
        }
        return;
    }
    case Process::Kind::Par: {
        std::vector<Step> l, r;
        forward_steps_into(p.left(), l);
        forward_steps_into(p.right(), r);
        const SyncSet& L = p.sync();
        for (auto& [t, q] : l)
            if (!L.count(act(t)))
                out.emplace_back(ProofTerm::par_l(t), Process::par(L, q, p.right()));
        for (auto& [t, q] : r)
            if (!L.count(act(t)))
                out.emplace_back(ProofTerm::par_r(t), Process::par(L, p.left(), q));
        for (auto& [t1, q1] : l) {
            const Action& a = act(t1);
            if (!L.count(a))
                continue;
            for (auto& [t2, q2] : r)
                if (act(t2) == a)
                    out.emplace_back(ProofTerm::syn(t1, t2), Process::par(L, q1, q2));
        }
        return;
    }
    }
}

// Outgoing transitions in a fixed order: left operand first, rule order
// Act / Cho / Par / Syn.
inline std::vector<Step> forward_steps(const Process& p)
{
    std::vector<Step> out;
    forward_steps_into(p, out);
    return out;
}

inline void brs_forward_steps_into(const BrsProcess& u, std::vector<BrsStep>& out)
{
    switch (u.kind()) {
    case BrsProcess::Kind::Nil:
        return;
    case BrsProcess::Kind::Prefix:
        if (!u.executed()) {
            if (u.cont().initial())
                out.emplace_back(BrsLabel{ProofTerm::act(u.action()), u.ready()},
                                 BrsProcess::prefix(u.action(), true, u.ready(), u.cont()));
            return;
        }
        {
            std::vector<BrsStep> inner;
            brs_forward_steps_into(u.cont(), inner);
            for (auto& [l, v] : inner)
                out.emplace_back(BrsLabel{ProofTerm::dot(l.proof), l.ready},
                                 BrsProcess::prefix(u.action(), true, u.ready(), v));
        }
        return;
    case BrsProcess::Kind::Choice:
        if (u.right().initial()) {
            std::vector<BrsStep> inner;
            brs_forward_steps_into(u.left(), inner);
            for (auto& [l, v] : inner)
                out.emplace_back(BrsLabel{ProofTerm::plus_l(l.proof), l.ready}, BrsProcess::choice(v, u.right()));
        }
        if (u.left().initial()) {
            std::vector<BrsStep> inner;
            brs_forward_steps_into(u.right(), inner);
            for (auto& [l, v] : inner)
                out.emplace_back(BrsLabel{ProofTerm::plus_r(l.proof), l.ready}, BrsProcess::choice(u.left(), v));
        }
        return;
    }
}

inline std::vector<BrsStep> brs_forward_steps(const BrsProcess& u)
{
    std::vector<BrsStep> out;
    brs_forward_steps_into(u, out);
    return out;
}

// ---------------------------------------------------------------------------
// Transition systems
// ---------------------------------------------------------------------------

using StateId = std::size_t;

template <class Term, class Label, class Hash>
struct BasicLts {
    struct Transition {
        StateId src;
        Label label;
        StateId dst;
    };

    std::vector<Term> states;
    std::vector<bool> initial_flags;
    std::vector<Transition> transitions;
    std::vector<std::vector<std::size_t>> out_edges; // indices into transitions
    std::vector<std::vector<std::size_t>> in_edges;
    StateId root = 0;
    std::unordered_map<Term, StateId, Hash> index;

    std::size_t size() const noexcept { return states.size(); }

    std::optional<StateId> find(const Term& t) const
    {
        auto it = index.find(t);
        if (it == index.end())
            return std::nullopt;
        return it->second;
    }

    StateId intern(const Term& t, bool& fresh)
    {
        auto [it, inserted] = index.emplace(t, states.size());
        fresh = inserted;
        if (inserted) {
            states.push_back(t);
            initial_flags.push_back(t.initial());
            out_edges.emplace_back();
            in_edges.emplace_back();
        }
        return it->second;
    }
};

using Lts = BasicLts<Process, ProofTerm, ProcessHash>;
using BrsLts = BasicLts<BrsProcess, BrsLabel, BrsProcessHash>;

inline const Action& observed_action(const ProofTerm& t) { return act(t); }
inline const Action& observed_action(const BrsLabel& l) { return act(l.proof); }

namespace detail {

template <class LtsT, class StepFn>
LtsT explore(const typename std::decay_t<decltype(std::declval<LtsT>().states)>::value_type& root, StepFn steps,
             std::size_t cap)
{
    LtsT lts;
    bool fresh = false;
    lts.root = lts.intern(root, fresh);
    std::deque<StateId> frontier{lts.root};
    while (!frontier.empty()) {
        StateId s = frontier.front();
        frontier.pop_front();
        auto next = steps(lts.states[s]);
        for (auto& [label, target] : next) {
            StateId d = lts.intern(target, fresh);
            if (fresh) {
                if (lts.states.size() > cap)
                    throw StateBudgetError("state budget of " + std::to_string(cap) + " states exceeded");
                frontier.push_back(d);
            }
            lts.out_edges[s].push_back(lts.transitions.size());
            lts.in_edges[d].push_back(lts.transitions.size());
            lts.transitions.push_back({s, std::move(label), d});
        }
    }
    return lts;
}

} // namespace detail

// Breadth-first closure of root under forward_steps.  By convention the root
// is initial; the backward direction is read off the same transitions.
inline Lts build_lts(const Process& root, std::size_t cap = default_state_cap())
{
    return detail::explore<Lts>(root, [](const Process& p) { return forward_steps(p); }, cap);
}

inline BrsLts build_brs_lts(const BrsProcess& root, std::size_t cap = default_state_cap())
{
    return detail::explore<BrsLts>(root, [](const BrsProcess& u) { return brs_forward_steps(u); }, cap);
}

template <class Term, class Label, class Hash>
std::vector<typename BasicLts<Term, Label, Hash>::Transition> incoming(const BasicLts<Term, Label, Hash>& lts,
                                                                       StateId s)
{
    if (s >= lts.states.size())
        throw Error("unknown state " + std::to_string(s));
    std::vector<typename BasicLts<Term, Label, Hash>::Transition> r;
    for (auto i : lts.in_edges[s])
        r.push_back(lts.transitions[i]);
    return r;
}

template <class Term, class Label, class Hash>
std::vector<typename BasicLts<Term, Label, Hash>::Transition> outgoing(const BasicLts<Term, Label, Hash>& lts,
                                                                       StateId s)
{
    if (s >= lts.states.size())
        throw Error("unknown state " + std::to_string(s));
    std::vector<typename BasicLts<Term, Label, Hash>::Transition> r;
    for (auto i : lts.out_edges[s])
        r.push_back(lts.transitions[i]);
    return r;
}

// Replays forward steps from to_initial(p).
inline bool is_reachable(const Process& p, std::size_t cap = default_state_cap())
{
    if (!is_wellformed(p))
        return false;
    if (p.initial())
        return true;
    return build_lts(to_initial(p), cap).find(p).has_value();
}

} // namespace revexp
