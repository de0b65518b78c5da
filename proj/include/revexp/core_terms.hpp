#pragma once

// Process terms of the reversible calculus, proof terms, and the syntactic
// predicates and measures defined on them.
//
//   P ::= 0 | a.P | a!.P | P + P | P |[L]| P
//
// Terms are immutable and share structure through reference counting, so a
// Process is cheap to copy and safe to hand to other threads.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace revexp {

using Action = std::string;
using ActionSet = std::set<Action>;
using SyncSet = ActionSet;

// Syntactic position of a node: 0 selects the prefix continuation, the left
// operand of + or the left operand of a parallel composition; 1 the right.
using Address = std::vector<std::uint8_t>;

inline const Action tau_action = "tau";

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UndefinedSyncError : Error {
    using Error::Error;
};
struct NotReachableError : Error {
    using Error::Error;
};

inline void hash_mix(std::size_t& seed, std::size_t v)
{
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

inline std::size_t hash_set(const ActionSet& s)
{
    std::size_t h = s.size();
    for (const auto& a : s)
        hash_mix(h, std::hash<std::string>{}(a));
    return h;
}

inline ActionSet set_union(const ActionSet& x, const ActionSet& y)
{
    ActionSet r = x;
    r.insert(y.begin(), y.end());
    return r;
}

inline ActionSet set_intersection(const ActionSet& x, const ActionSet& y)
{
    ActionSet r;
    for (const auto& a : x)
        if (y.count(a))
            r.insert(a);
    return r;
}

inline ActionSet set_minus(const ActionSet& x, const ActionSet& y)
{
    ActionSet r;
    for (const auto& a : x)
        if (!y.count(a))
            r.insert(a);
    return r;
}

// ---------------------------------------------------------------------------
// Process
// ---------------------------------------------------------------------------

class Process {
public:
    enum class Kind : std::uint8_t { Nil, Prefix, Choice, Par };

    Process();

    static Process nil() { return Process(); }
    static Process prefix(Action a, bool executed, Process cont);
    static Process choice(Process l, Process r);
    static Process par(SyncSet sync, Process l, Process r);

    Kind kind() const noexcept;
    bool is_nil() const noexcept { return kind() == Kind::Nil; }
    bool is_prefix() const noexcept { return kind() == Kind::Prefix; }
    bool is_choice() const noexcept { return kind() == Kind::Choice; }
    bool is_par() const noexcept { return kind() == Kind::Par; }

    const Action& action() const noexcept;
    bool executed() const noexcept;
    const Process& cont() const noexcept;
    const Process& left() const noexcept;
    const Process& right() const noexcept;
    const SyncSet& sync() const noexcept;

    // Cached: true iff no prefix below is executed.
    bool initial() const noexcept;
    std::size_t hash() const noexcept;
    std::size_t node_count() const noexcept;

    friend bool operator==(const Process& x, const Process& y);
    friend bool operator!=(const Process& x, const Process& y) { return !(x == y); }

private:
    struct Node;
    struct NullTag {};
    explicit Process(NullTag) noexcept {}
    explicit Process(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static const std::shared_ptr<const Node>& nil_node();

    std::shared_ptr<const Node> n_;
};

struct Process::Node {
    Kind kind = Kind::Nil;
    bool executed = false;
    bool initial = true;
    Action action;
    SyncSet sync;
    // Null placeholders unless used; a prefix keeps its continuation in `left`.
    Process left{NullTag{}}, right{NullTag{}};
    std::size_t hash = 0;
    std::size_t count = 1;

    void finish()
    {
        hash = static_cast<std::size_t>(kind) * 0x100000001b3ULL + 1;
        if (kind == Kind::Prefix) {
            hash_mix(hash, std::hash<std::string>{}(action));
            hash_mix(hash, executed ? 7 : 3);
        }
        if (kind == Kind::Par)
            hash_mix(hash, hash_set(sync));
        if (left.n_) {
            hash_mix(hash, left.hash());
            count += left.node_count();
        }
        if (right.n_) {
            hash_mix(hash, right.hash());
            count += right.node_count();
        }
    }
};

inline const std::shared_ptr<const Process::Node>& Process::nil_node()
{
    static const std::shared_ptr<const Node> n = [] {
        auto m = std::make_shared<Node>();
        m->finish();
        return std::shared_ptr<const Node>(std::move(m));
    }();
    return n;
}

inline Process::Process() : n_(nil_node()) {}

inline Process Process::prefix(Action a, bool executed, Process cont)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Prefix;
    n->action = std::move(a);
    n->executed = executed;
    n->initial = !executed && cont.initial();
    n->left = std::move(cont);
    n->finish();
    return Process(std::move(n));
}

inline Process Process::choice(Process l, Process r)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Choice;
    n->initial = l.initial() && r.initial();
    n->left = std::move(l);
    n->right = std::move(r);
    n->finish();
    return Process(std::move(n));
}

inline Process Process::par(SyncSet sync, Process l, Process r)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Par;
    n->sync = std::move(sync);
    n->initial = l.initial() && r.initial();
    n->left = std::move(l);
    n->right = std::move(r);
    n->finish();
    return Process(std::move(n));
}

inline Process::Kind Process::kind() const noexcept { return n_->kind; }
inline const Action& Process::action() const noexcept { return n_->action; }
inline bool Process::executed() const noexcept { return n_->executed; }
inline const Process& Process::cont() const noexcept { return n_->left; }
inline const Process& Process::left() const noexcept { return n_->left; }
inline const Process& Process::right() const noexcept { return n_->right; }
inline const SyncSet& Process::sync() const noexcept { return n_->sync; }
inline bool Process::initial() const noexcept { return n_->initial; }
inline std::size_t Process::hash() const noexcept { return n_->hash; }
inline std::size_t Process::node_count() const noexcept { return n_->count; }

inline bool operator==(const Process& x, const Process& y)
{
    if (x.n_ == y.n_)
        return true;
    if (x.n_->hash != y.n_->hash || x.n_->kind != y.n_->kind || x.n_->count != y.n_->count)
        return false;
    switch (x.kind()) {
    case Process::Kind::Nil:
        return true;
    case Process::Kind::Prefix:
        return x.executed() == y.executed() && x.action() == y.action() && x.cont() == y.cont();
    case Process::Kind::Choice:
        return x.left() == y.left() && x.right() == y.right();
    case Process::Kind::Par:
        return x.sync() == y.sync() && x.left() == y.left() && x.right() == y.right();
    }
    return false;
}

struct ProcessHash {
    std::size_t operator()(const Process& p) const noexcept { return p.hash(); }
};

// ---------------------------------------------------------------------------
// ProofTerm
// ---------------------------------------------------------------------------

class ProofTerm {
public:
    enum class Kind : std::uint8_t { Act, Dot, PlusL, PlusR, ParL, ParR, Syn };

    static ProofTerm act(Action a)
    {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Act;
        n->action = std::move(a);
        n->finish();
        return ProofTerm(std::move(n));
    }
    static ProofTerm wrap(Kind k, ProofTerm inner)
    {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->inner.push_back(std::move(inner));
        n->finish();
        return ProofTerm(std::move(n));
    }
    static ProofTerm dot(ProofTerm t) { return wrap(Kind::Dot, std::move(t)); }
    static ProofTerm plus_l(ProofTerm t) { return wrap(Kind::PlusL, std::move(t)); }
    static ProofTerm plus_r(ProofTerm t) { return wrap(Kind::PlusR, std::move(t)); }
    static ProofTerm par_l(ProofTerm t) { return wrap(Kind::ParL, std::move(t)); }
    static ProofTerm par_r(ProofTerm t) { return wrap(Kind::ParR, std::move(t)); }
    static ProofTerm syn(ProofTerm l, ProofTerm r)
    {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Syn;
        n->inner.push_back(std::move(l));
        n->inner.push_back(std::move(r));
        n->finish();
        return ProofTerm(std::move(n));
    }

    Kind kind() const noexcept { return n_->kind; }
    // Only meaningful for Act.
    const Action& action() const noexcept { return n_->action; }
    // The wrapped term of Dot/PlusL/PlusR/ParL/ParR, or the left side of Syn.
    const ProofTerm& inner() const noexcept { return n_->inner[0]; }
    const ProofTerm& syn_left() const noexcept { return n_->inner[0]; }
    const ProofTerm& syn_right() const noexcept { return n_->inner[1]; }
    std::size_t hash() const noexcept { return n_->hash; }

    friend bool operator==(const ProofTerm& x, const ProofTerm& y)
    {
        if (x.n_ == y.n_)
            return true;
        if (x.n_->hash != y.n_->hash || x.kind() != y.kind())
            return false;
        if (x.kind() == Kind::Act)
            return x.action() == y.action();
        return x.n_->inner == y.n_->inner;
    }
    friend bool operator!=(const ProofTerm& x, const ProofTerm& y) { return !(x == y); }

private:
    struct Node {
        Kind kind = Kind::Act;
        Action action;
        std::vector<ProofTerm> inner;
        std::size_t hash = 0;
        void finish()
        {
            hash = static_cast<std::size_t>(kind) + 0x51ed27;
            if (kind == Kind::Act)
                hash_mix(hash, std::hash<std::string>{}(action));
            for (const auto& t : inner)
                hash_mix(hash, t.hash());
        }
    };
    explicit ProofTerm(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

// Text form used for labels, ordering and traces:
//   a   .t   +l t   +r t   |l t   |r t   <t,t>
inline std::string to_string(const ProofTerm& t)
{
    switch (t.kind()) {
    case ProofTerm::Kind::Act:
        return t.action();
    case ProofTerm::Kind::Dot:
        return "." + to_string(t.inner());
    case ProofTerm::Kind::PlusL:
        return "+l " + to_string(t.inner());
    case ProofTerm::Kind::PlusR:
        return "+r " + to_string(t.inner());
    case ProofTerm::Kind::ParL:
        return "|l " + to_string(t.inner());
    case ProofTerm::Kind::ParR:
        return "|r " + to_string(t.inner());
    case ProofTerm::Kind::Syn:
        return "<" + to_string(t.syn_left()) + "," + to_string(t.syn_right()) + ">";
    }
    return {};
}

// act(): the action carried by a proof term; Syn requires agreeing sides.
inline const Action& act(const ProofTerm& t)
{
    switch (t.kind()) {
    case ProofTerm::Kind::Act:
        return t.action();
    case ProofTerm::Kind::Syn: {
        const Action& l = act(t.syn_left());
        const Action& r = act(t.syn_right());
        if (l != r)
            throw UndefinedSyncError("synchronization of different actions '" + l + "' and '" + r + "'");
        return l;
    }
    default:
        return act(t.inner());
    }
}

// All prefix addresses a proof term fires (two for a synchronization).
inline void fired_addresses(const ProofTerm& t, Address& prefix, std::vector<Address>& out)
{
    switch (t.kind()) {
    case ProofTerm::Kind::Act:
        out.push_back(prefix);
        return;
    case ProofTerm::Kind::Syn: {
        prefix.push_back(0);
        fired_addresses(t.syn_left(), prefix, out);
        prefix.back() = 1;
        fired_addresses(t.syn_right(), prefix, out);
        prefix.pop_back();
        return;
    }
    case ProofTerm::Kind::PlusR:
    case ProofTerm::Kind::ParR:
        prefix.push_back(1);
        break;
    default:
        prefix.push_back(0);
        break;
    }
    fired_addresses(t.inner(), prefix, out);
    prefix.pop_back();
}

inline std::vector<Address> fired_addresses(const ProofTerm& t)
{
    std::vector<Address> out;
    Address prefix;
    fired_addresses(t, prefix, out);
    return out;
}

// ---------------------------------------------------------------------------
// Predicates and measures
// ---------------------------------------------------------------------------

inline bool is_initial(const Process& p) { return p.initial(); }

inline bool is_wellformed(const Process& p)
{
    switch (p.kind()) {
    case Process::Kind::Nil:
        return true;
    case Process::Kind::Prefix:
        return p.executed() ? is_wellformed(p.cont()) : p.cont().initial();
    case Process::Kind::Choice:
        return (is_wellformed(p.left()) && p.right().initial()) ||
               (p.left().initial() && is_wellformed(p.right()));
    case Process::Kind::Par:
        return is_wellformed(p.left()) && is_wellformed(p.right());
    }
    return false;
}

// Explains the first violated clause of the well-formedness predicate, or
// returns an empty string.
inline std::string wellformedness_violation(const Process& p)
{
    switch (p.kind()) {
    case Process::Kind::Nil:
        return {};
    case Process::Kind::Prefix:
        if (p.executed())
            return wellformedness_violation(p.cont());
        if (!p.cont().initial())
            return "unexecuted action '" + p.action() + "' followed by executed actions";
        return {};
    case Process::Kind::Choice:
        if (!p.left().initial() && !p.right().initial())
            return "executed action on both sides of +";
        return p.left().initial() ? wellformedness_violation(p.right()) : wellformedness_violation(p.left());
    case Process::Kind::Par: {
        auto l = wellformedness_violation(p.left());
        return l.empty() ? wellformedness_violation(p.right()) : l;
    }
    }
    return {};
}

inline ActionSet frs(const Process& p)
{
    switch (p.kind()) {
    case Process::Kind::Nil:
        return {};
    case Process::Kind::Prefix:
        return p.executed() ? frs(p.cont()) : ActionSet{p.action()};
    case Process::Kind::Choice:
        if (p.left().initial() && p.right().initial())
            return set_union(frs(p.left()), frs(p.right()));
        return p.left().initial() ? frs(p.right()) : frs(p.left());
    case Process::Kind::Par: {
        ActionSet f1 = frs(p.left()), f2 = frs(p.right());
        ActionSet r = set_union(set_minus(f1, p.sync()), set_minus(f2, p.sync()));
        for (const auto& a : set_intersection(set_intersection(f1, f2), p.sync()))
            r.insert(a);
        return r;
    }
    }
    return {};
}

inline ActionSet brs(const Process& p)
{
    switch (p.kind()) {
    case Process::Kind::Nil:
        return {};
    case Process::Kind::Prefix:
        if (!p.executed())
            return {};
        return p.cont().initial() ? ActionSet{p.action()} : brs(p.cont());
    case Process::Kind::Choice:
        if (p.left().initial() && p.right().initial())
            return {};
        return p.left().initial() ? brs(p.right()) : brs(p.left());
    case Process::Kind::Par: {
        ActionSet b1 = brs(p.left()), b2 = brs(p.right());
        ActionSet r = set_union(set_minus(b1, p.sync()), set_minus(b2, p.sync()));
        for (const auto& a : set_intersection(set_intersection(b1, b2), p.sync()))
            r.insert(a);
        return r;
    }
    }
    return {};
}

inline Process to_initial(const Process& p)
{
    if (p.initial())
        return p;
    switch (p.kind()) {
    case Process::Kind::Prefix:
        return Process::prefix(p.action(), false, to_initial(p.cont()));
    case Process::Kind::Choice:
        return Process::choice(to_initial(p.left()), to_initial(p.right()));
    case Process::Kind::Par:
        return Process::par(p.sync(), to_initial(p.left()), to_initial(p.right()));
    default:
        return p;
    }
}

// upd(E, t): mark the action addressed by t as executed. Total: mismatching
// proof terms leave the node unchanged, exactly like the "otherwise" clauses.
inline Process upd(const Process& e, const ProofTerm& t)
{
    using K = ProofTerm::Kind;
    switch (e.kind()) {
    case Process::Kind::Nil:
        return e;
    case Process::Kind::Prefix:
        if (!e.executed())
            return t.kind() == K::Act && t.action() == e.action() ? Process::prefix(e.action(), true, e.cont()) : e;
        if (t.kind() == K::Dot)
            return Process::prefix(e.action(), true, upd(e.cont(), t.inner()));
        return e;
    case Process::Kind::Choice:
        if (t.kind() == K::PlusL)
            return Process::choice(upd(e.left(), t.inner()), e.right());
        if (t.kind() == K::PlusR)
            return Process::choice(e.left(), upd(e.right(), t.inner()));
        return e;
    case Process::Kind::Par:
        if (t.kind() == K::ParL)
            return Process::par(e.sync(), upd(e.left(), t.inner()), e.right());
        if (t.kind() == K::ParR)
            return Process::par(e.sync(), e.left(), upd(e.right(), t.inner()));
        if (t.kind() == K::Syn)
            return Process::par(e.sync(), upd(e.left(), t.syn_left()), upd(e.right(), t.syn_right()));
        return e;
    }
    return e;
}

inline std::size_t size(const Process& p)
{
    switch (p.kind()) {
    case Process::Kind::Nil:
        return 0;
    case Process::Kind::Prefix:
        return 1 + size(p.cont());
    case Process::Kind::Choice:
        return std::max(size(p.left()), size(p.right()));
    case Process::Kind::Par:
        return size(p.left()) + size(p.right());
    }
    return 0;
}

// Parse-tree depth: 0 for Nil, one more than the deepest child otherwise.
inline std::size_t depth(const Process& p)
{
    switch (p.kind()) {
    case Process::Kind::Nil:
        return 0;
    case Process::Kind::Prefix:
        return 1 + depth(p.cont());
    default:
        return 1 + std::max(depth(p.left()), depth(p.right()));
    }
}

inline bool is_sequential(const Process& p)
{
    switch (p.kind()) {
    case Process::Kind::Nil:
        return true;
    case Process::Kind::Prefix:
        return is_sequential(p.cont());
    case Process::Kind::Choice:
        return is_sequential(p.left()) && is_sequential(p.right());
    case Process::Kind::Par:
        return false;
    }
    return true;
}

// Subterm at an address (no bounds checking beyond the node kinds).
inline const Process& subterm(const Process& p, const Address& a)
{
    const Process* cur = &p;
    for (auto step : a)
        cur = step == 0 ? &cur->left() : &cur->right();
    return *cur;
}

// Every address of an executed prefix, in pre-order.
inline void executed_addresses(const Process& p, Address& at, std::vector<Address>& out)
{
    if (p.initial())
        return;
    if (p.is_prefix()) {
        out.push_back(at);
        at.push_back(0);
        executed_addresses(p.cont(), at, out);
        at.pop_back();
        return;
    }
    at.push_back(0);
    executed_addresses(p.left(), at, out);
    at.back() = 1;
    executed_addresses(p.right(), at, out);
    at.pop_back();
}

inline std::vector<Address> executed_addresses(const Process& p)
{
    std::vector<Address> out;
    Address at;
    executed_addresses(p, at, out);
    return out;
}

} // namespace revexp
