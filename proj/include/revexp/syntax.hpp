#pragma once

// Concrete syntax.
//
//   P   ::= "0" | ACT "." P | ACT "!" "." P | P "+" P | P PAR P | "(" P ")"
//   PAR ::= "|[" (ACT ("," ACT)*)? "]|"
//   ACT ::= [a-z][a-z0-9_]*
//
// Prefix binds tighter than "+", which binds tighter than PAR; both binary
// operators associate to the left.  Encoded terms use `<a,{x,y}>.` and
// `<a!,{x,y}>.` prefixes instead of `a.` / `a!.`.  A dagger (U+2020) is
// accepted wherever `!` is.

#include "brs_process.hpp"
#include "core_terms.hpp"

#include <sstream>
#include <string>
#include <string_view>

namespace revexp {

struct SyntaxError : Error {
    SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
        : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line(line),
          column(column)
    {
    }
    std::size_t line, column;
};

struct WellFormednessError : Error {
    using Error::Error;
};

struct RenderOptions {
    bool unicode = false;
};

inline const char* dagger(const RenderOptions& o) { return o.unicode ? "\xE2\x80\xA0" : "!"; }

inline std::string render_set(const ActionSet& s)
{
    std::string r = "{";
    bool first = true;
    for (const auto& a : s) {
        if (!first)
            r += ",";
        r += a;
        first = false;
    }
    return r + "}";
}

namespace detail {

inline void render_into(const Process& p, std::string& out, const RenderOptions& o);

inline void render_paren(const Process& p, bool paren, std::string& out, const RenderOptions& o)
{
    if (paren)
        out += '(';
    render_into(p, out, o);
    if (paren)
        out += ')';
}

inline void render_into(const Process& p, std::string& out, const RenderOptions& o)
{
    switch (p.kind()) {
    case Process::Kind::Nil:
        out += '0';
        return;
    case Process::Kind::Prefix:
        out += p.action();
        if (p.executed())
            out += dagger(o);
        out += '.';
        render_paren(p.cont(), p.cont().is_choice() || p.cont().is_par(), out, o);
        return;
    case Process::Kind::Choice:
        render_paren(p.left(), p.left().is_par(), out, o);
        out += " + ";
        render_paren(p.right(), p.right().is_par() || p.right().is_choice(), out, o);
        return;
    case Process::Kind::Par: {
        render_paren(p.left(), false, out, o);
        out += " |[";
        bool first = true;
        for (const auto& a : p.sync()) {
            if (!first)
                out += ',';
            out += a;
            first = false;
        }
        out += "]| ";
        render_paren(p.right(), p.right().is_par(), out, o);
        return;
    }
    }
}

inline void render_into(const BrsProcess& u, std::string& out, const RenderOptions& o)
{
    switch (u.kind()) {
    case BrsProcess::Kind::Nil:
        out += '0';
        return;
    case BrsProcess::Kind::Prefix:
        out += '<';
        out += u.action();
        if (u.executed())
            out += dagger(o);
        out += ',';
        out += render_set(u.ready());
        out += ">.";
        if (u.cont().is_choice()) {
            out += '(';
            render_into(u.cont(), out, o);
            out += ')';
        } else {
            render_into(u.cont(), out, o);
        }
        return;
    case BrsProcess::Kind::Choice:
        render_into(u.left(), out, o);
        out += " + ";
        if (u.right().is_choice()) {
            out += '(';
            render_into(u.right(), out, o);
            out += ')';
        } else {
            render_into(u.right(), out, o);
        }
        return;
    }
}

} // namespace detail

inline std::string render(const Process& p, const RenderOptions& o = {})
{
    std::string out;
    detail::render_into(p, out, o);
    return out;
}

inline std::string render(const BrsProcess& u, const RenderOptions& o = {})
{
    std::string out;
    detail::render_into(u, out, o);
    return out;
}

inline std::string render(const ProofTerm& t) { return to_string(t); }

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct ParseOptions {
    bool allow_illformed = false;
};

namespace detail {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    void skip_ws()
    {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) {
            if (s_[i_] == '\n') {
                ++line_;
                line_start_ = i_ + 1;
            }
            ++i_;
        }
    }
    bool at_end()
    {
        skip_ws();
        return i_ >= s_.size();
    }
    bool peek(std::string_view tok)
    {
        skip_ws();
        return s_.substr(i_, tok.size()) == tok;
    }
    bool accept(std::string_view tok)
    {
        if (!peek(tok))
            return false;
        i_ += tok.size();
        return true;
    }
    void expect(std::string_view tok)
    {
        if (!accept(tok))
            fail("expected '" + std::string(tok) + "'");
    }
    bool peek_action()
    {
        skip_ws();
        return i_ < s_.size() && s_[i_] >= 'a' && s_[i_] <= 'z';
    }
    Action action()
    {
        if (!peek_action())
            fail("expected an action name");
        std::size_t b = i_;
        while (i_ < s_.size() &&
               ((s_[i_] >= 'a' && s_[i_] <= 'z') || (s_[i_] >= '0' && s_[i_] <= '9') || s_[i_] == '_'))
            ++i_;
        return Action(s_.substr(b, i_ - b));
    }
    bool accept_dagger() { return accept("!") || accept("\xE2\x80\xA0"); }

    [[noreturn]] void fail(const std::string& msg)
    {
        skip_ws();
        throw SyntaxError(msg, line_, i_ - line_start_ + 1);
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::size_t line_start_ = 0;
};

inline SyncSet parse_sync(Cursor& c)
{
    SyncSet L;
    if (c.accept("]|"))
        return L;
    for (;;) {
        Action a = c.action();
        if (a == tau_action)
            c.fail("'tau' cannot be synchronized");
        L.insert(a);
        if (c.accept("]|"))
            return L;
        c.expect(",");
    }
}

inline Process parse_par(Cursor& c);

inline Process parse_prefix(Cursor& c)
{
    if (c.accept("(")) {
        Process p = parse_par(c);
        c.expect(")");
        return p;
    }
    if (c.accept("0"))
        return Process::nil();
    if (!c.peek_action())
        c.fail("expected '0', an action or '('");
    Action a = c.action();
    bool executed = c.accept_dagger();
    c.expect(".");
    return Process::prefix(a, executed, parse_prefix(c));
}

inline Process parse_choice(Cursor& c)
{
    Process p = parse_prefix(c);
    while (c.accept("+"))
        p = Process::choice(p, parse_prefix(c));
    return p;
}

inline Process parse_par(Cursor& c)
{
    Process p = parse_choice(c);
    while (c.accept("|[")) {
        SyncSet L = parse_sync(c);
        p = Process::par(std::move(L), p, parse_choice(c));
    }
    return p;
}

inline BrsProcess parse_brs_choice(Cursor& c);

inline BrsProcess parse_brs_prefix(Cursor& c)
{
    if (c.accept("(")) {
        BrsProcess u = parse_brs_choice(c);
        c.expect(")");
        return u;
    }
    if (c.accept("0"))
        return BrsProcess::nil();
    c.expect("<");
    Action a = c.action();
    bool executed = c.accept_dagger();
    c.expect(",");
    c.expect("{");
    ActionSet ready;
    if (!c.accept("}")) {
        for (;;) {
            ready.insert(c.action());
            if (c.accept("}"))
                break;
            c.expect(",");
        }
    }
    c.expect(">");
    c.expect(".");
    return BrsProcess::prefix(a, executed, std::move(ready), parse_brs_prefix(c));
}

inline BrsProcess parse_brs_choice(Cursor& c)
{
    BrsProcess u = parse_brs_prefix(c);
    while (c.accept("+"))
        u = BrsProcess::choice(u, parse_brs_prefix(c));
    return u;
}

inline ProofTerm parse_proof(Cursor& c)
{
    if (c.accept("."))
        return ProofTerm::dot(parse_proof(c));
    if (c.accept("+l"))
        return ProofTerm::plus_l(parse_proof(c));
    if (c.accept("+r"))
        return ProofTerm::plus_r(parse_proof(c));
    if (c.accept("|l"))
        return ProofTerm::par_l(parse_proof(c));
    if (c.accept("|r"))
        return ProofTerm::par_r(parse_proof(c));
    if (c.accept("<")) {
        ProofTerm l = parse_proof(c);
        c.expect(",");
        ProofTerm r = parse_proof(c);
        c.expect(">");
        return ProofTerm::syn(l, r);
    }
    return ProofTerm::act(c.action());
}

} // namespace detail

inline Process parse(std::string_view src, const ParseOptions& opt = {})
{
    detail::Cursor c(src);
    Process p = detail::parse_par(c);
    if (!c.at_end())
        c.fail("unexpected trailing input");
    if (!opt.allow_illformed) {
        auto why = wellformedness_violation(p);
        if (!why.empty())
            throw WellFormednessError("ill-formed process: " + why);
    }
    return p;
}

inline BrsProcess parse_brs(std::string_view src)
{
    detail::Cursor c(src);
    BrsProcess u = detail::parse_brs_choice(c);
    if (!c.at_end())
        c.fail("unexpected trailing input");
    return u;
}

inline ProofTerm parse_proof(std::string_view src)
{
    detail::Cursor c(src);
    ProofTerm t = detail::parse_proof(c);
    if (!c.at_end())
        c.fail("unexpected trailing input");
    return t;
}

inline std::ostream& operator<<(std::ostream& os, const Process& p) { return os << render(p); }
inline std::ostream& operator<<(std::ostream& os, const BrsProcess& u) { return os << render(u); }
inline std::ostream& operator<<(std::ostream& os, const ProofTerm& t) { return os << to_string(t); }

} // namespace revexp
