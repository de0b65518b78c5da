#pragma once

// Encoding of processes into sequential terms whose prefixes carry the
// backward ready set of the state they lead to.
//
// The encoding of P is the unfolding of the transition system of
// to_initial(P), with the prefixes along one serialization of P's history
// marked executed.  It is computed compositionally: sequential operators are
// encoded in place, and parallel compositions are expanded from the
// encodings of their operands.  Which executed prefix of two concurrent
// operands comes first is decided by an ExecutionOrder over proof terms.
//
// Every node of the intermediate tree records the (whole-operand) state it
// stands for, so the ready set of an emitted prefix is simply brs() of the
// state reached by firing it.

#include "brs_process.hpp"
#include "core_terms.hpp"
#include "proved_lts.hpp"
#include "syntax.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

namespace revexp {

struct OrderError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Execution orders
// ---------------------------------------------------------------------------

class ExecutionOrder {
public:
    virtual ~ExecutionOrder() = default;
    // Whether the prefix fired by x was executed before the one fired by y.
    // Both are proof terms relative to the whole encoded process.
    virtual bool precedes(const ProofTerm& x, const ProofTerm& y) const = 0;
    virtual std::string describe() const = 0;
};

// Compares proof-term renderings.  Two executed heads of the same parallel
// composition differ first at "|l" versus "|r", so the left operand always
// goes first.
class LexicographicOrder final : public ExecutionOrder {
public:
    bool precedes(const ProofTerm& x, const ProofTerm& y) const override { return to_string(x) < to_string(y); }
    std::string describe() const override { return "lex"; }
};

// The order in which prefixes were actually executed, keyed by the address of
// each fired prefix.  Both prefixes of a synchronization share a rank.
class HistoryOrder final : public ExecutionOrder {
public:
    HistoryOrder() = default;

    static HistoryOrder from_history(const std::vector<ProofTerm>& steps)
    {
        HistoryOrder o;
        for (const auto& t : steps)
            o.record(t);
        return o;
    }

    // One proof term per line; blank lines and lines starting with '#' are
    // ignored.
    static HistoryOrder from_file(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw Error("cannot open order file '" + path + "'");
        HistoryOrder o;
        std::string line;
        while (std::getline(in, line)) {
            auto b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos || line[b] == '#')
                continue;
            o.record(parse_proof(line));
        }
        return o;
    }

    void record(const ProofTerm& t)
    {
        for (auto& a : fired_addresses(t))
            rank_[a] = next_;
        ++next_;
        history_.push_back(t);
    }

    HistoryOrder extended(const ProofTerm& t) const
    {
        HistoryOrder o = *this;
        o.record(t);
        return o;
    }

    std::optional<std::size_t> rank(const ProofTerm& t) const
    {
        std::optional<std::size_t> r;
        for (auto& a : fired_addresses(t)) {
            auto it = rank_.find(a);
            if (it == rank_.end())
                return std::nullopt;
            r = r ? std::min(*r, it->second) : it->second;
        }
        return r;
    }

    bool precedes(const ProofTerm& x, const ProofTerm& y) const override
    {
        auto rx = rank(x), ry = rank(y);
        if (!rx || !ry)
            throw OrderError("execution order cannot compare '" + to_string(x) + "' and '" + to_string(y) + "'");
        return *rx < *ry;
    }

    std::string describe() const override
    {
        std::string s = "history:";
        for (const auto& t : history_)
            s += " [" + to_string(t) + "]";
        return s;
    }

    const std::vector<ProofTerm>& history() const noexcept { return history_; }

private:
    std::map<Address, std::size_t> rank_;
    std::size_t next_ = 0;
    std::vector<ProofTerm> history_;
};

inline LexicographicOrder default_order(const Process&) { return {}; }

// Every serialization of p's past: the forward paths from to_initial(p) to p,
// as sequences of proof terms.  At most `limit` paths are returned.
inline std::vector<std::vector<ProofTerm>> histories(const Process& p, std::size_t limit = 100000,
                                                     std::size_t cap = default_state_cap())
{
    Lts lts = build_lts(to_initial(p), cap);
    auto target = lts.find(p);
    if (!target)
        throw NotReachableError("'" + render(p) + "' is not reachable");
    std::vector<std::vector<ProofTerm>> out;
    std::vector<ProofTerm> path;
    auto walk = [&](auto&& self, StateId s) -> void {
        if (out.size() >= limit)
            return;
        if (lts.in_edges[s].empty()) {
            out.emplace_back(path.rbegin(), path.rend());
            return;
        }
        for (auto e : lts.in_edges[s]) {
            path.push_back(lts.transitions[e].label);
            self(self, lts.transitions[e].src);
            path.pop_back();
        }
    };
    walk(walk, *target);
    return out;
}

// ---------------------------------------------------------------------------
// Observations
// ---------------------------------------------------------------------------

struct Observation {
    Action action;
    ActionSet ready;
    friend bool operator==(const Observation& x, const Observation& y)
    {
        return x.action == y.action && x.ready == y.ready;
    }
};

inline Observation observe(const ProofTerm& t, const Process& target) { return {act(t), brs(target)}; }

// ---------------------------------------------------------------------------
// Encoding
// ---------------------------------------------------------------------------

namespace detail {

struct EncTree;
using EncTreePtr = std::shared_ptr<const EncTree>;

// How the branches of a node are grouped into binary sums.  A null shape
// means a flat, left-nested sum.
struct SumShape {
    enum class Kind { Nil, Leaf, Sum } kind = Kind::Nil;
    std::size_t leaf = 0;
    std::shared_ptr<const SumShape> left, right;
};
using ShapePtr = std::shared_ptr<const SumShape>;

struct EncBranch {
    ProofTerm proof;  // relative to the operand the tree encodes
    bool executed;    // on the serialized history
    Process target;   // operand state reached by firing the branch
    EncTreePtr child; // subtree rooted at `target`
};

struct EncTree {
    Process state;
    bool history = false; // some branch is executed
    std::vector<EncBranch> branches;
    ShapePtr shape;
};

inline ShapePtr shape_offset(const ShapePtr& s, std::size_t by)
{
    if (!s || s->kind == SumShape::Kind::Nil || by == 0)
        return s;
    auto r = std::make_shared<SumShape>(*s);
    if (s->kind == SumShape::Kind::Leaf)
        r->leaf += by;
    else {
        r->left = shape_offset(s->left, by);
        r->right = shape_offset(s->right, by);
    }
    return r;
}

inline ShapePtr shape_of(const EncTree& t)
{
    if (t.shape)
        return t.shape;
    // Materialize the implicit flat sum.
    auto nil = std::make_shared<SumShape>();
    if (t.branches.empty())
        return nil;
    ShapePtr acc;
    for (std::size_t i = 0; i < t.branches.size(); ++i) {
        auto leaf = std::make_shared<SumShape>();
        leaf->kind = SumShape::Kind::Leaf;
        leaf->leaf = i;
        if (!acc) {
            acc = leaf;
        } else {
            auto s = std::make_shared<SumShape>();
            s->kind = SumShape::Kind::Sum;
            s->left = acc;
            s->right = leaf;
            acc = s;
        }
    }
    return acc;
}

template <class StateFn, class ProofFn>
EncTreePtr map_tree(const EncTreePtr& t, const StateFn& fs, const ProofFn& fp)
{
    auto r = std::make_shared<EncTree>();
    r->state = fs(t->state);
    r->history = t->history;
    r->shape = t->shape;
    r->branches.reserve(t->branches.size());
    for (const auto& b : t->branches)
        r->branches.push_back({fp(b.proof), b.executed, fs(b.target), map_tree(b.child, fs, fp)});
    return r;
}

// Same tree with the history erased.
inline EncTreePtr toinit(const EncTreePtr& t)
{
    if (!t->history)
        return t;
    auto r = std::make_shared<EncTree>();
    r->state = t->state;
    r->shape = t->shape;
    for (const auto& b : t->branches)
        r->branches.push_back({b.proof, false, b.target, toinit(b.child)});
    return r;
}

inline ProofTerm wrap_context(const std::vector<ProofTerm::Kind>& ctx, ProofTerm t)
{
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
        t = ProofTerm::wrap(*it, std::move(t));
    return t;
}

inline std::optional<std::size_t> executed_branch(const EncTree& t)
{
    for (std::size_t i = 0; i < t.branches.size(); ++i)
        if (t.branches[i].executed)
            return i;
    return std::nullopt;
}

class Encoder {
public:
    explicit Encoder(const ExecutionOrder& order) : order_(order) {}

    EncTreePtr build(const Process& p)
    {
        std::vector<ProofTerm::Kind> ctx;
        return build(p, ctx);
    }

private:
    const ExecutionOrder& order_;

    static EncTreePtr leaf_tree(const Process& state)
    {
        auto t = std::make_shared<EncTree>();
        t->state = state;
        t->shape = std::make_shared<SumShape>();
        return t;
    }

    EncTreePtr build(const Process& p, std::vector<ProofTerm::Kind>& ctx)
    {
        switch (p.kind()) {
        case Process::Kind::Nil:
            return leaf_tree(p);
        case Process::Kind::Prefix: {
            ctx.push_back(ProofTerm::Kind::Dot);
            EncTreePtr inner = build(p.cont(), ctx);
            ctx.pop_back();
            const Action& a = p.action();
            auto child = map_tree(
                inner, [&](const Process& x) { return Process::prefix(a, true, x); },
                [](const ProofTerm& t) { return ProofTerm::dot(t); });
            auto t = std::make_shared<EncTree>();
            t->state = Process::prefix(a, false, inner->state);
            t->history = p.executed();
            t->branches.push_back({ProofTerm::act(a), p.executed(), child->state, child});
            auto leaf = std::make_shared<SumShape>();
            leaf->kind = SumShape::Kind::Leaf;
            t->shape = leaf;
            return t;
        }
        case Process::Kind::Choice: {
            ctx.push_back(ProofTerm::Kind::PlusL);
            EncTreePtr l = build(p.left(), ctx);
            ctx.back() = ProofTerm::Kind::PlusR;
            EncTreePtr r = build(p.right(), ctx);
            ctx.pop_back();
            const Process ls = l->state, rs = r->state;
            auto wl = map_tree(
                l, [&](const Process& x) { return Process::choice(x, rs); },
                [](const ProofTerm& t) { return ProofTerm::plus_l(t); });
            auto wr = map_tree(
                r, [&](const Process& x) { return Process::choice(ls, x); },
                [](const ProofTerm& t) { return ProofTerm::plus_r(t); });
            auto t = std::make_shared<EncTree>();
            t->state = Process::choice(ls, rs);
            t->history = l->history || r->history;
            t->branches = wl->branches;
            t->branches.insert(t->branches.end(), wr->branches.begin(), wr->branches.end());
            auto s = std::make_shared<SumShape>();
            s->kind = SumShape::Kind::Sum;
            s->left = shape_of(*wl);
            s->right = shape_offset(shape_of(*wr), wl->branches.size());
            t->shape = s;
            return t;
        }
        case Process::Kind::Par: {
            ctx.push_back(ProofTerm::Kind::ParL);
            EncTreePtr l = build(p.left(), ctx);
            ctx.back() = ProofTerm::Kind::ParR;
            EncTreePtr r = build(p.right(), ctx);
            ctx.pop_back();
            return expand(l, r, p.sync(), ctx);
        }
        }
        return leaf_tree(p);
    }

    // Expansion of the parallel composition of two encoded operands; the
    // history-carrying branch comes first, then the alternatives that the
    // forward-reverse semantics may select after a rollback.
    EncTreePtr expand(const EncTreePtr& t1, const EncTreePtr& t2, const SyncSet& L,
                      const std::vector<ProofTerm::Kind>& ctx)
    {
        auto out = std::make_shared<EncTree>();
        out->state = Process::par(L, t1->state, t2->state);
        auto& bs = out->branches;
        auto in_sync = [&](const EncBranch& b) { return L.count(act(b.proof)) > 0; };

        auto left_move = [&](const EncBranch& b, const EncTreePtr& other, bool executed) {
            EncTreePtr c1 = executed ? b.child : toinit(b.child);
            bs.push_back({ProofTerm::par_l(b.proof), executed, Process::par(L, b.target, other->state),
                          expand(c1, other, L, ctx)});
        };
        auto right_move = [&](const EncTreePtr& other, const EncBranch& b, bool executed) {
            EncTreePtr c2 = executed ? b.child : toinit(b.child);
            bs.push_back({ProofTerm::par_r(b.proof), executed, Process::par(L, other->state, b.target),
                          expand(other, c2, L, ctx)});
        };
        auto sync = [&](const EncBranch& b1, const EncBranch& b2, bool executed) {
            EncTreePtr c1 = executed ? b1.child : toinit(b1.child);
            EncTreePtr c2 = executed ? b2.child : toinit(b2.child);
            bs.push_back({ProofTerm::syn(b1.proof, b2.proof), executed, Process::par(L, b1.target, b2.target),
                          expand(c1, c2, L, ctx)});
        };
        auto syncs = [&](const std::vector<const EncBranch*>& xs, const std::vector<const EncBranch*>& ys) {
            for (auto* b1 : xs) {
                if (!in_sync(*b1))
                    continue;
                for (auto* b2 : ys)
                    if (act(b2->proof) == act(b1->proof))
                        sync(*b1, *b2, false);
            }
        };

        auto h1 = executed_branch(*t1);
        auto h2 = executed_branch(*t2);
        std::vector<const EncBranch*> rest1, rest2;
        for (std::size_t i = 0; i < t1->branches.size(); ++i)
            if (i != h1)
                rest1.push_back(&t1->branches[i]);
        for (std::size_t i = 0; i < t2->branches.size(); ++i)
            if (i != h2)
                rest2.push_back(&t2->branches[i]);
        EncTreePtr i1 = toinit(t1), i2 = toinit(t2);

        if (!h1 && !h2) {
            for (auto* b : rest1)
                if (!in_sync(*b))
                    left_move(*b, t2, false);
            for (auto* b : rest2)
                if (!in_sync(*b))
                    right_move(t1, *b, false);
            syncs(rest1, rest2);
        } else if (h1 && !h2) {
            const EncBranch& x = t1->branches[*h1];
            if (in_sync(x))
                throw NotReachableError("executed synchronizing action '" + act(x.proof) + "' has no partner");
            left_move(x, t2, true);
            for (auto* b : rest1)
                if (!in_sync(*b))
                    left_move(*b, t2, false);
            for (auto* b : rest2)
                if (!in_sync(*b))
                    right_move(i1, *b, false);
            syncs(rest1, rest2);
        } else if (!h1 && h2) {
            const EncBranch& y = t2->branches[*h2];
            if (in_sync(y))
                throw NotReachableError("executed synchronizing action '" + act(y.proof) + "' has no partner");
            right_move(t1, y, true);
            for (auto* b : rest2)
                if (!in_sync(*b))
                    right_move(t1, *b, false);
            for (auto* b : rest1)
                if (!in_sync(*b))
                    left_move(*b, i2, false);
            syncs(rest1, rest2);
        } else {
            const EncBranch& x = t1->branches[*h1];
            const EncBranch& y = t2->branches[*h2];
            bool x_sync = in_sync(x), y_sync = in_sync(y);
            auto left_first = [&] {
                return order_.precedes(wrap_context(ctx, ProofTerm::par_l(x.proof)),
                                       wrap_context(ctx, ProofTerm::par_r(y.proof)));
            };
            if (!x_sync && (y_sync || left_first())) {
                left_move(x, t2, true);
                if (!y_sync)
                    right_move(i1, y, false);
                for (auto* b : rest1)
                    if (!in_sync(*b))
                        left_move(*b, i2, false);
                for (auto* b : rest2)
                    if (!in_sync(*b))
                        right_move(i1, *b, false);
                std::vector<const EncBranch*> ys;
                if (y_sync)
                    ys.push_back(&y);
                ys.insert(ys.end(), rest2.begin(), rest2.end());
                syncs(rest1, ys);
            } else if (!y_sync) {
                right_move(t1, y, true);
                if (!x_sync)
                    left_move(x, i2, false);
                for (auto* b : rest2)
                    if (!in_sync(*b))
                        right_move(i1, *b, false);
                for (auto* b : rest1)
                    if (!in_sync(*b))
                        left_move(*b, i2, false);
                std::vector<const EncBranch*> xs;
                if (x_sync)
                    xs.push_back(&x);
                xs.insert(xs.end(), rest1.begin(), rest1.end());
                syncs(xs, rest2);
            } else if (act(x.proof) == act(y.proof)) {
                sync(x, y, true);
                for (auto* b : rest1)
                    if (!in_sync(*b))
                        left_move(*b, i2, false);
                for (auto* b : rest2)
                    if (!in_sync(*b))
                        right_move(i1, *b, false);
                std::vector<const EncBranch*> xs{&x}, ys{&y};
                xs.insert(xs.end(), rest1.begin(), rest1.end());
                ys.insert(ys.end(), rest2.begin(), rest2.end());
                for (auto* b1 : xs)
                    for (auto* b2 : ys)
                        if (!(b1 == &x && b2 == &y) && in_sync(*b1) && act(b1->proof) == act(b2->proof))
                            sync(*b1, *b2, false);
            } else {
                throw NotReachableError("executed synchronizing actions '" + act(x.proof) + "' and '" +
                                        act(y.proof) + "' cannot be paired");
            }
        }
        for (const auto& b : bs)
            out->history = out->history || b.executed;
        return out;
    }
};

inline BrsProcess to_brs(const EncTree& t);

inline BrsProcess to_brs_shape(const EncTree& t, const SumShape& s)
{
    switch (s.kind) {
    case SumShape::Kind::Nil:
        return BrsProcess::nil();
    case SumShape::Kind::Leaf: {
        const EncBranch& b = t.branches[s.leaf];
        return BrsProcess::prefix(act(b.proof), b.executed, brs(b.target), to_brs(*b.child));
    }
    case SumShape::Kind::Sum:
        return BrsProcess::choice(to_brs_shape(t, *s.left), to_brs_shape(t, *s.right));
    }
    return BrsProcess::nil();
}

inline BrsProcess to_brs(const EncTree& t)
{
    if (t.shape)
        return to_brs_shape(t, *t.shape);
    std::vector<BrsProcess> xs;
    for (const auto& b : t.branches)
        xs.push_back(BrsProcess::prefix(act(b.proof), b.executed, brs(b.target), to_brs(*b.child)));
    return sum_of(xs);
}

} // namespace detail

// Encoding without the reachability check; callers guarantee reachability.
inline BrsProcess encode_unchecked(const Process& p, const ExecutionOrder& order)
{
    detail::Encoder enc(order);
    return detail::to_brs(*enc.build(p));
}

inline BrsProcess encode(const Process& p, const ExecutionOrder& order)
{
    if (!is_reachable(p))
        throw NotReachableError("'" + render(p) + "' is not reachable");
    return encode_unchecked(p, order);
}

inline BrsProcess encode(const Process& p) { return encode(p, default_order(p)); }

// The default order where it applies.  Where it contradicts the past (the
// static order puts a left operand first, but a synchronization forces the
// right one to have gone first) an actual history is used instead.
inline BrsProcess encode_default(const Process& p)
{
    if (!is_reachable(p))
        throw NotReachableError("'" + render(p) + "' is not reachable");
    try {
        return encode_unchecked(p, default_order(p));
    } catch (const NotReachableError&) {
        return encode_unchecked(p, HistoryOrder::from_history(histories(p, 1).front()));
    }
}

// The encodings of p under every serialization of its past, without
// duplicates (one for an initial process).
inline std::vector<BrsProcess> encodings(const Process& p)
{
    if (p.initial())
        return {encode(p)};
    std::vector<BrsProcess> out;
    std::unordered_set<BrsProcess, BrsProcessHash> seen;
    for (const auto& h : histories(p)) {
        BrsProcess e = encode_unchecked(p, HistoryOrder::from_history(h));
        if (seen.insert(e).second)
            out.push_back(e);
    }
    return out;
}

// Expansion of two encoded operands, rebuilt from the processes they encode.
// `p1` and `p2` are the operands; the result equals the encoding of
// p1 |[L]| p2.
inline BrsProcess expand_parallel(const Process& p1, const Process& p2, const SyncSet& L,
                                  const ExecutionOrder& order)
{
    return encode(Process::par(L, p1, p2), order);
}

// Action of the last executed prefix along the executed path, if any.
inline std::optional<Action> last_executed(const BrsProcess& u)
{
    std::optional<Action> last;
    const BrsProcess* cur = &u;
    for (;;) {
        const BrsProcess* next = nullptr;
        for (const auto& s : summands(*cur))
            if (s.is_prefix() && s.executed()) {
                last = s.action();
                next = &s.cont();
            }
        if (!next)
            return last;
        cur = next;
    }
}

// Side condition under which the encoding keeps the backward ready set: no
// parallel composition of two non-initial operands whose last executed
// actions differ and are both outside the synchronization set.
inline bool brs_preservation_applies(const Process& p)
{
    switch (p.kind()) {
    case Process::Kind::Nil:
        return true;
    case Process::Kind::Prefix:
        return brs_preservation_applies(p.cont());
    case Process::Kind::Choice:
        return brs_preservation_applies(p.left()) && brs_preservation_applies(p.right());
    case Process::Kind::Par:
        if (!p.left().initial() && !p.right().initial()) {
            auto b1 = last_executed(encode_default(p.left()));
            auto b2 = last_executed(encode_default(p.right()));
            if (b1 != b2 && !p.sync().count(*b1) && !p.sync().count(*b2))
                return false;
        }
        return brs_preservation_applies(p.left()) && brs_preservation_applies(p.right());
    }
    return true;
}

// ---------------------------------------------------------------------------
// Comparison modulo associativity and commutativity of +
// ---------------------------------------------------------------------------

// A key that is equal for two terms iff they are equal up to associativity
// and commutativity of choice and the unit law for 0.
inline std::string ac_key(const BrsProcess& u)
{
    std::vector<std::string> parts;
    for (const auto& s : summands(u)) {
        if (s.is_nil())
            continue;
        parts.push_back("<" + s.action() + (s.executed() ? "!" : "") + "," + render_set(s.ready()) + ">." +
                        ac_key(s.cont()));
    }
    if (parts.empty())
        return "0";
    if (parts.size() == 1)
        return parts.front();
    std::sort(parts.begin(), parts.end());
    std::string r = "(";
    for (std::size_t i = 0; i < parts.size(); ++i)
        r += (i ? "+" : "") + parts[i];
    return r + ")";
}

// ---------------------------------------------------------------------------
// Transition correspondence
// ---------------------------------------------------------------------------

struct CorrespondenceReport {
    bool ok = true;
    std::size_t states = 0;      // (state, history) pairs visited
    std::size_t transitions = 0; // forward transitions matched
    std::string violation;       // first mismatch, empty when ok
};

// Walks every history of p0 up to `depth` steps.  For each visited state P
// with history order o and each transition P -θ-> P', the encoding of P
// under o must have a transition labeled (act θ, brs P') to the encoding of
// P' under o extended with θ, and every transition of the encoding must be
// matched that way.
inline CorrespondenceReport verify_correspondence(const Process& p0, std::size_t depth = static_cast<std::size_t>(-1))
{
    CorrespondenceReport rep;
    using Triple = std::tuple<Action, ActionSet, std::string>;
    auto walk = [&](auto&& self, const Process& p, const HistoryOrder& o, const BrsProcess& e,
                    std::size_t d) -> void {
        if (!rep.ok)
            return;
        ++rep.states;
        std::set<Triple> have;
        for (auto& [label, target] : brs_forward_steps(e))
            have.emplace(act(label.proof), label.ready, ac_key(target));
        std::set<Triple> want;
        std::vector<std::tuple<Process, HistoryOrder, BrsProcess>> next;
        for (auto& [theta, q] : forward_steps(p)) {
            HistoryOrder o2 = o.extended(theta);
            BrsProcess e2 = encode_unchecked(q, o2);
            Triple t{act(theta), brs(q), ac_key(e2)};
            if (!have.count(t)) {
                rep.ok = false;
                rep.violation = "'" + render(p) + "' -" + to_string(theta) + "-> '" + render(q) +
                                "' has no matching transition from encoding '" + render(e) + "' (" + o.describe() +
                                ")";
                return;
            }
            want.insert(std::move(t));
            ++rep.transitions;
            next.emplace_back(q, std::move(o2), std::move(e2));
        }
        for (const auto& t : have) {
            if (!want.count(t)) {
                rep.ok = false;
                rep.violation = "encoding '" + render(e) + "' of '" + render(p) + "' has a transition labeled (" +
                                std::get<0>(t) + "," + render_set(std::get<1>(t)) +
                                ") that no process transition matches (" + o.describe() + ")";
                return;
            }
        }
        if (d == 0)
            return;
        for (auto& [q, o2, e2] : next)
            self(self, q, o2, e2, d - 1);
    };
    if (!p0.initial()) {
        rep.ok = false;
        rep.violation = "'" + render(p0) + "' is not initial";
        return rep;
    }
    walk(walk, p0, HistoryOrder{}, encode_unchecked(p0, HistoryOrder{}), depth);
    return rep;
}

} // namespace revexp
