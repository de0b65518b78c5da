#pragma once

// Sequential terms whose prefixes carry a backward ready set:
//
//   U ::= 0 | <a,R>.U | <a!,R>.U | U + U

#include "core_terms.hpp"

namespace revexp {

class BrsProcess {
public:
    enum class Kind : std::uint8_t { Nil, Prefix, Choice };

    BrsProcess();

    static BrsProcess nil() { return BrsProcess(); }
    static BrsProcess prefix(Action a, bool executed, ActionSet ready, BrsProcess cont);
    static BrsProcess choice(BrsProcess l, BrsProcess r);

    Kind kind() const noexcept;
    bool is_nil() const noexcept { return kind() == Kind::Nil; }
    bool is_prefix() const noexcept { return kind() == Kind::Prefix; }
    bool is_choice() const noexcept { return kind() == Kind::Choice; }

    const Action& action() const noexcept;
    bool executed() const noexcept;
    const ActionSet& ready() const noexcept;
    const BrsProcess& cont() const noexcept;
    const BrsProcess& left() const noexcept;
    const BrsProcess& right() const noexcept;

    bool initial() const noexcept;
    std::size_t hash() const noexcept;
    std::size_t node_count() const noexcept;

    friend bool operator==(const BrsProcess& x, const BrsProcess& y);
    friend bool operator!=(const BrsProcess& x, const BrsProcess& y) { return !(x == y); }

private:
    struct Node;
    struct NullTag {};
    explicit BrsProcess(NullTag) noexcept {}
    explicit BrsProcess(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static const std::shared_ptr<const Node>& nil_node();

    std::shared_ptr<const Node> n_;
};

struct BrsProcess::Node {
    Kind kind = Kind::Nil;
    bool executed = false;
    bool initial = true;
    Action action;
    ActionSet ready;
    BrsProcess left{NullTag{}}, right{NullTag{}};
    std::size_t hash = 0;
    std::size_t count = 1;

    void finish()
    {
        hash = static_cast<std::size_t>(kind) * 0x100000001b3ULL + 11;
        if (kind == Kind::Prefix) {
            hash_mix(hash, std::hash<std::string>{}(action));
            hash_mix(hash, executed ? 7 : 3);
            hash_mix(hash, hash_set(ready));
        }
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

inline const std::shared_ptr<const BrsProcess::Node>& BrsProcess::nil_node()
{
    static const std::shared_ptr<const Node> n = [] {
        auto m = std::make_shared<Node>();
        m->finish();
        return std::shared_ptr<const Node>(std::move(m));
    }();
    return n;
}

inline BrsProcess::BrsProcess() : n_(nil_node()) {}

inline BrsProcess BrsProcess::prefix(Action a, bool executed, ActionSet ready, BrsProcess cont)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Prefix;
    n->action = std::move(a);
    n->executed = executed;
    n->ready = std::move(ready);
    n->initial = !executed && cont.initial();
    n->left = std::move(cont);
    n->finish();
    return BrsProcess(std::move(n));
}

inline BrsProcess BrsProcess::choice(BrsProcess l, BrsProcess r)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Choice;
    n->initial = l.initial() && r.initial();
    n->left = std::move(l);
    n->right = std::move(r);
    n->finish();
    return BrsProcess(std::move(n));
}

inline BrsProcess::Kind BrsProcess::kind() const noexcept { return n_->kind; }
inline const Action& BrsProcess::action() const noexcept { return n_->action; }
inline bool BrsProcess::executed() const noexcept { return n_->executed; }
inline const ActionSet& BrsProcess::ready() const noexcept { return n_->ready; }
inline const BrsProcess& BrsProcess::cont() const noexcept { return n_->left; }
inline const BrsProcess& BrsProcess::left() const noexcept { return n_->left; }
inline const BrsProcess& BrsProcess::right() const noexcept { return n_->right; }
inline bool BrsProcess::initial() const noexcept { return n_->initial; }
inline std::size_t BrsProcess::hash() const noexcept { return n_->hash; }
inline std::size_t BrsProcess::node_count() const noexcept { return n_->count; }

inline bool operator==(const BrsProcess& x, const BrsProcess& y)
{
    if (x.n_ == y.n_)
        return true;
    if (x.n_->hash != y.n_->hash || x.n_->kind != y.n_->kind || x.n_->count != y.n_->count)
        return false;
    switch (x.kind()) {
    case BrsProcess::Kind::Nil:
        return true;
    case BrsProcess::Kind::Prefix:
        return x.executed() == y.executed() && x.action() == y.action() && x.ready() == y.ready() &&
               x.cont() == y.cont();
    case BrsProcess::Kind::Choice:
        return x.left() == y.left() && x.right() == y.right();
    }
    return false;
}

struct BrsProcessHash {
    std::size_t operator()(const BrsProcess& u) const noexcept { return u.hash(); }
};

inline bool is_initial(const BrsProcess& u) { return u.initial(); }

// Same predicate as for processes; ready sets are ignored.
inline bool is_wellformed(const BrsProcess& u)
{
    switch (u.kind()) {
    case BrsProcess::Kind::Nil:
        return true;
    case BrsProcess::Kind::Prefix:
        return u.executed() ? is_wellformed(u.cont()) : u.cont().initial();
    case BrsProcess::Kind::Choice:
        return (is_wellformed(u.left()) && u.right().initial()) ||
               (u.left().initial() && is_wellformed(u.right()));
    }
    return false;
}

inline BrsProcess to_initial(const BrsProcess& u)
{
    if (u.initial())
        return u;
    if (u.is_prefix())
        return BrsProcess::prefix(u.action(), false, u.ready(), to_initial(u.cont()));
    return BrsProcess::choice(to_initial(u.left()), to_initial(u.right()));
}

// Actions labeling the incoming transitions of u (sequential terms have at
// most one).
inline ActionSet brs(const BrsProcess& u)
{
    switch (u.kind()) {
    case BrsProcess::Kind::Nil:
        return {};
    case BrsProcess::Kind::Prefix:
        if (!u.executed())
            return {};
        return u.cont().initial() ? ActionSet{u.action()} : brs(u.cont());
    case BrsProcess::Kind::Choice:
        if (u.left().initial() && u.right().initial())
            return {};
        return u.left().initial() ? brs(u.right()) : brs(u.left());
    }
    return {};
}

// Summands of a choice tree, left to right, Nil summands included.
inline void summands(const BrsProcess& u, std::vector<BrsProcess>& out)
{
    if (u.is_choice()) {
        summands(u.left(), out);
        summands(u.right(), out);
    } else {
        out.push_back(u);
    }
}

inline std::vector<BrsProcess> summands(const BrsProcess& u)
{
    std::vector<BrsProcess> out;
    summands(u, out);
    return out;
}

// Left-nested sum; Nil for an empty list.
inline BrsProcess sum_of(const std::vector<BrsProcess>& xs)
{
    if (xs.empty())
        return BrsProcess::nil();
    BrsProcess acc = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i)
        acc = BrsProcess::choice(acc, xs[i]);
    return acc;
}

} // namespace revexp
