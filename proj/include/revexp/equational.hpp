#pragma once

// Axiomatic equality: normal forms, canonical representatives and decision
// procedures for the three theories.
//
//   F   axioms A_F,1..8 over processes            (past-sensitive forward)
//   R   axioms A_R,1..5 over encoded processes    (reverse)
//   FR  axioms A_FR,1..5 over encoded processes   (forward-reverse)
//
// Equality is decided by normalizing both sides and comparing canonical
// representatives; normalizers can record the axioms they apply.

#include "brs_encoding.hpp"
#include "brs_process.hpp"
#include "core_terms.hpp"
#include "syntax.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace revexp {

enum class Theory { F, R, FR };

inline const char* to_string(Theory t)
{
    switch (t) {
    case Theory::F:
        return "F";
    case Theory::R:
        return "R";
    case Theory::FR:
        return "FR";
    }
    return "?";
}

struct NotNormalizedError : Error {
    using Error::Error;
};

// Placeholder for "some action was executed" in canonical F forms.  It cannot
// be written in source text.
inline const Action past_action = "#past";

// Axiom applications, e.g. "A_F,7 @ +L".
using Trace = std::vector<std::string>;

namespace detail {

inline std::string path_string(const std::vector<std::string>& path)
{
    if (path.empty())
        return "root";
    std::string s;
    for (const auto& p : path)
        s += (s.empty() ? "" : " ") + p;
    return s;
}

inline void note(Trace* trace, const char* axiom, const std::vector<std::string>& path)
{
    if (trace)
        trace->push_back(std::string(axiom) + " @ " + path_string(path));
}

inline void flatten(const Process& p, std::vector<Process>& out)
{
    if (p.is_choice()) {
        flatten(p.left(), out);
        flatten(p.right(), out);
    } else {
        out.push_back(p);
    }
}

inline Process sum_of(const std::vector<Process>& xs)
{
    if (xs.empty())
        return Process::nil();
    Process acc = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i)
        acc = Process::choice(acc, xs[i]);
    return acc;
}

// Splits an F-nf term into its optional executed head action and the
// summands of the initial sum under it.
inline void split_fnf(const Process& q, std::optional<Action>& head, std::vector<Process>& summands)
{
    const Process* body = &q;
    if (q.is_prefix() && q.executed()) {
        head = q.action();
        body = &q.cont();
    }
    std::vector<Process> xs;
    flatten(*body, xs);
    for (auto& x : xs)
        if (!x.is_nil())
            summands.push_back(x);
}

inline bool is_initial_fnf_sum(const Process& p)
{
    std::vector<Process> xs;
    flatten(p, xs);
    if (xs.size() == 1 && xs.front().is_nil())
        return true;
    for (const auto& x : xs)
        if (!x.is_prefix() || x.executed() || !is_initial_fnf_sum(x.cont()))
            return false;
    return true;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Theory F
// ---------------------------------------------------------------------------

// [b!.] sum of a_i.P_i with every P_i initial and in F-nf.
inline bool is_fnf(const Process& p)
{
    if (p.is_prefix() && p.executed())
        return detail::is_initial_fnf_sum(p.cont());
    return detail::is_initial_fnf_sum(p);
}

// One application of the expansion law A_F,8 to F-nf operands:
//   [a!.] ( sum_i a1i.(P1i |[L]| P2') + sum_i a2i.(P1' |[L]| P2i) + sum syncs )
// The leading executed action, present iff one operand has one, is taken from
// the left operand if possible (any action will do, by A_F,5).
inline Process expansion_law_f(const Process& p1, const Process& p2, const SyncSet& L)
{
    if (!is_fnf(p1))
        throw NotNormalizedError("'" + render(p1) + "' is not in F-nf");
    if (!is_fnf(p2))
        throw NotNormalizedError("'" + render(p2) + "' is not in F-nf");
    std::optional<Action> h1, h2;
    std::vector<Process> s1, s2;
    detail::split_fnf(p1, h1, s1);
    detail::split_fnf(p2, h2, s2);
    Process r1 = detail::sum_of(s1), r2 = detail::sum_of(s2);
    std::vector<Process> g1, g2, g3;
    for (const auto& x : s1)
        if (!L.count(x.action()))
            g1.push_back(Process::prefix(x.action(), false, Process::par(L, x.cont(), r2)));
    for (const auto& y : s2)
        if (!L.count(y.action()))
            g2.push_back(Process::prefix(y.action(), false, Process::par(L, r1, y.cont())));
    for (const auto& x : s1) {
        if (!L.count(x.action()))
            continue;
        for (const auto& y : s2)
            if (y.action() == x.action())
                g3.push_back(Process::prefix(x.action(), false, Process::par(L, x.cont(), y.cont())));
    }
    Process body = Process::choice(Process::choice(detail::sum_of(g1), detail::sum_of(g2)), detail::sum_of(g3));
    if (h1 || h2)
        return Process::prefix(h1 ? *h1 : *h2, true, body);
    return body;
}

namespace detail {

inline Process normalize_f(const Process& p, std::vector<std::string>& path, Trace* trace)
{
    switch (p.kind()) {
    case Process::Kind::Nil:
        return p;
    case Process::Kind::Prefix: {
        path.push_back(".");
        Process q = normalize_f(p.cont(), path, trace);
        path.pop_back();
        if (p.executed() && !q.initial()) {
            note(trace, "A_F,6", path);
            return q;
        }
        return Process::prefix(p.action(), p.executed(), q);
    }
    case Process::Kind::Choice: {
        path.push_back("+L");
        Process q1 = normalize_f(p.left(), path, trace);
        path.back() = "+R";
        Process q2 = normalize_f(p.right(), path, trace);
        path.pop_back();
        if (!q1.initial()) {
            note(trace, "A_F,7", path);
            return q1;
        }
        if (!q2.initial()) {
            note(trace, "A_F,2", path);
            note(trace, "A_F,7", path);
            return q2;
        }
        std::vector<Process> xs;
        flatten(q1, xs);
        flatten(q2, xs);
        std::vector<Process> kept;
        for (auto& x : xs)
            if (!x.is_nil())
                kept.push_back(x);
        if (kept.size() != xs.size())
            note(trace, "A_F,3", path);
        return sum_of(kept);
    }
    case Process::Kind::Par: {
        path.push_back("|L");
        Process q1 = normalize_f(p.left(), path, trace);
        path.back() = "|R";
        Process q2 = normalize_f(p.right(), path, trace);
        path.pop_back();
        note(trace, "A_F,8", path);
        // Operands of the parallel compositions inside the expansion are
        // initial and smaller, so this terminates (induction on size).
        return normalize_f(expansion_law_f(q1, q2, p.sync()), path, trace);
    }
    }
    return p;
}

inline Process canonical_f_sum(const Process& p)
{
    std::vector<Process> xs;
    flatten(p, xs);
    std::vector<std::pair<std::string, Process>> keyed;
    for (auto& x : xs) {
        if (x.is_nil())
            continue;
        Process c = Process::prefix(x.action(), false, canonical_f_sum(x.cont()));
        keyed.emplace_back(render(c), c);
    }
    std::sort(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first == b.first; }),
                keyed.end());
    std::vector<Process> out;
    for (auto& [k, c] : keyed)
        out.push_back(c);
    return sum_of(out);
}

} // namespace detail

// Normal form reachable by A_F from a reachable process, following the
// constructive proof: A_F,6 collapses nested pasts, A_F,7 drops the
// alternatives next to a non-initial summand, A_F,3 removes 0 summands and
// A_F,8 eliminates parallel composition.
inline Process normalize_f(const Process& p, Trace* trace = nullptr)
{
    std::vector<std::string> path;
    return detail::normalize_f(p, path, trace);
}

// Summands sorted by rendering and duplicates removed (A_F,1/2/4); the
// executed head becomes the placeholder action (A_F,5).
inline Process canonical_f(const Process& q)
{
    if (!is_fnf(q))
        throw NotNormalizedError("'" + render(q) + "' is not in F-nf");
    if (q.is_prefix() && q.executed())
        return Process::prefix(past_action, true, detail::canonical_f_sum(q.cont()));
    return detail::canonical_f_sum(q);
}

// ---------------------------------------------------------------------------
// Theory R
// ---------------------------------------------------------------------------

// 0 or <a!,R>.U with U in R-nf.
inline bool is_rnf(const BrsProcess& u)
{
    if (u.is_nil())
        return true;
    return u.is_prefix() && u.executed() && is_rnf(u.cont());
}

namespace detail {

inline BrsProcess normalize_r(const BrsProcess& u, std::vector<std::string>& path, Trace* trace)
{
    switch (u.kind()) {
    case BrsProcess::Kind::Nil:
        return u;
    case BrsProcess::Kind::Prefix: {
        if (!u.executed()) {
            note(trace, "A_R,3", path);
            return BrsProcess::nil();
        }
        path.push_back(".");
        BrsProcess c = normalize_r(u.cont(), path, trace);
        path.pop_back();
        return BrsProcess::prefix(u.action(), true, u.ready(), c);
    }
    case BrsProcess::Kind::Choice: {
        if (!u.left().initial() || u.right().initial()) {
            note(trace, "A_R,4", path);
            path.push_back("+L");
            BrsProcess r = normalize_r(u.left(), path, trace);
            path.pop_back();
            return r;
        }
        note(trace, "A_R,2", path);
        note(trace, "A_R,4", path);
        path.push_back("+R");
        BrsProcess r = normalize_r(u.right(), path, trace);
        path.pop_back();
        return r;
    }
    }
    return u;
}

} // namespace detail

// Drops every unexecuted future (A_R,3) and every alternative that was not
// selected (A_R,4), leaving the chain of executed prefixes.
inline BrsProcess normalize_r(const BrsProcess& u, Trace* trace = nullptr)
{
    std::vector<std::string> path;
    return detail::normalize_r(u, path, trace);
}

inline BrsProcess canonical_r(const BrsProcess& u)
{
    if (!is_rnf(u))
        throw NotNormalizedError("'" + render(u) + "' is not in R-nf");
    return u;
}

// ---------------------------------------------------------------------------
// Theory FR
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_initial_frnf_summand(const BrsProcess& s);

inline bool is_frnf_sum(const BrsProcess& u, bool allow_head)
{
    auto xs = summands(u);
    if (xs.size() == 1 && xs.front().is_nil())
        return true;
    bool seen_head = false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& x = xs[i];
        if (!x.is_prefix())
            return false;
        if (x.executed()) {
            if (!allow_head || seen_head || i != 0 || !is_frnf_sum(x.cont(), true))
                return false;
            seen_head = true;
        } else if (!is_initial_frnf_summand(x)) {
            return false;
        }
    }
    return true;
}

inline bool is_initial_frnf_summand(const BrsProcess& s)
{
    return s.is_prefix() && !s.executed() && s.cont().initial() && is_frnf_sum(s.cont(), false);
}

} // namespace detail

// [<b!,R>.U' +] sum of <a_i,R_i>.U_i with U' in FR-nf and every U_i initial
// and in FR-nf; 0 summands only as the whole term.
inline bool is_frnf(const BrsProcess& u) { return detail::is_frnf_sum(u, true); }

namespace detail {

inline BrsProcess normalize_fr(const BrsProcess& u, std::vector<std::string>& path, Trace* trace)
{
    auto xs = summands(u);
    std::optional<BrsProcess> head;
    std::vector<BrsProcess> rest;
    bool dropped_nil = false;
    for (const auto& x : xs) {
        if (x.is_nil()) {
            dropped_nil = true;
            continue;
        }
        path.push_back(".");
        BrsProcess c = normalize_fr(x.cont(), path, trace);
        path.pop_back();
        BrsProcess y = BrsProcess::prefix(x.action(), x.executed(), x.ready(), c);
        if (x.executed())
            head = y;
        else
            rest.push_back(y);
    }
    if (dropped_nil && xs.size() > 1)
        note(trace, "A_FR,3", path);
    std::vector<BrsProcess> out;
    if (head) {
        if (!xs.front().executed())
            note(trace, "A_FR,2", path);
        out.push_back(*head);
    }
    out.insert(out.end(), rest.begin(), rest.end());
    return sum_of(out);
}

inline BrsProcess canonical_fr(const BrsProcess& u);

// Key of an initial canonical term; used to absorb initial summands.
inline std::string fr_key(const BrsProcess& u) { return render(canonical_fr(u)); }

inline BrsProcess canonical_fr(const BrsProcess& u)
{
    std::optional<BrsProcess> head;
    std::vector<std::pair<std::string, BrsProcess>> keyed;
    for (const auto& x : summands(u)) {
        if (x.is_nil())
            continue;
        BrsProcess y = BrsProcess::prefix(x.action(), x.executed(), x.ready(), canonical_fr(x.cont()));
        if (x.executed())
            head = y;
        else
            keyed.emplace_back(render(y), y);
    }
    std::sort(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first == b.first; }),
                keyed.end());
    std::vector<BrsProcess> out;
    if (head) {
        // A_FR,4: an initial alternative equal to the head rolled back is
        // absorbed by it.
        std::string undone = fr_key(to_initial(*head));
        keyed.erase(std::remove_if(keyed.begin(), keyed.end(), [&](auto& k) { return k.first == undone; }),
                    keyed.end());
        out.push_back(*head);
    }
    for (auto& [k, y] : keyed)
        out.push_back(y);
    return sum_of(out);
}

} // namespace detail

// Moves the executed summand first (A_FR,2) and removes 0 summands (A_FR,3),
// recursively.
inline BrsProcess normalize_fr(const BrsProcess& u, Trace* trace = nullptr)
{
    std::vector<std::string> path;
    return detail::normalize_fr(u, path, trace);
}

// Initial summands sorted and deduplicated (A_FR,1/2/4), and absorbed by the
// executed summand when they coincide with it rolled back (A_FR,4).
inline BrsProcess canonical_fr(const BrsProcess& u)
{
    if (!is_frnf(u))
        throw NotNormalizedError("'" + render(u) + "' is not in FR-nf");
    return detail::canonical_fr(u);
}

// ---------------------------------------------------------------------------
// Deciding equality
// ---------------------------------------------------------------------------

// How the past of a non-initial process is serialized before encoding.
//   Lexicographic: the static default order only (falling back to an actual
//   history where that order contradicts a synchronization).
//   AllHistories: every serialization of the actual past; the representative
//   is the set of resulting canonical forms, which does not depend on how the
//   operands happen to be arranged.
enum class PastOrder { Lexicographic, AllHistories };

namespace detail {

inline std::string encoded_form(const BrsProcess& e, Theory theory, Trace* trace)
{
    note(trace, theory == Theory::R ? "A_R,5" : "A_FR,5", {});
    return theory == Theory::R ? render(revexp::canonical_r(revexp::normalize_r(e, trace)))
                               : render(revexp::canonical_fr(revexp::normalize_fr(e, trace)));
}

} // namespace detail

// Canonical representatives of p, sorted and without duplicates.  A single
// one for theory F, for initial processes and for the lexicographic order.
inline std::vector<std::string> canonical_forms(const Process& p, Theory theory,
                                                PastOrder past = PastOrder::AllHistories, Trace* trace = nullptr)
{
    if (theory == Theory::F) {
        Process q = normalize_f(p, trace);
        if (q.is_prefix() && q.executed())
            detail::note(trace, "A_F,5", {});
        return {render(canonical_f(q))};
    }
    if (p.initial() || past == PastOrder::Lexicographic)
        return {detail::encoded_form(encode_default(p), theory, trace)};
    std::vector<std::string> out;
    for (const auto& h : histories(p)) {
        out.push_back(detail::encoded_form(encode_unchecked(p, HistoryOrder::from_history(h)), theory, trace));
        trace = nullptr; // the first serialization is traced
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// The representatives joined into one comparable string.
inline std::string canonical_form(const Process& p, Theory theory, PastOrder past = PastOrder::AllHistories,
                                  Trace* trace = nullptr)
{
    std::string s;
    for (const auto& f : canonical_forms(p, theory, past, trace))
        s += (s.empty() ? "" : " ; ") + f;
    return s;
}

inline bool prove_eq(const Process& p1, const Process& p2, Theory theory, PastOrder past = PastOrder::AllHistories,
                     Trace* trace = nullptr)
{
    if (!is_reachable(p1))
        throw NotReachableError("'" + render(p1) + "' is not reachable");
    if (!is_reachable(p2))
        throw NotReachableError("'" + render(p2) + "' is not reachable");
    Trace t1, t2;
    bool eq = canonical_form(p1, theory, past, trace ? &t1 : nullptr) ==
              canonical_form(p2, theory, past, trace ? &t2 : nullptr);
    if (trace) {
        for (auto& s : t1)
            trace->push_back("left: " + s);
        for (auto& s : t2)
            trace->push_back("right: " + s);
    }
    return eq;
}

} // namespace revexp
