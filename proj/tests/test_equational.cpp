#include "revexp/bisimilarity.hpp"
#include "revexp/enumerate.hpp"
#include "revexp/equational.hpp"
#include "revexp/oracle.hpp"
#include "revexp/syntax.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace revexp;

namespace {

Process P(const char* s) { return parse(s); }
BrsProcess U(const char* s) { return parse_brs(s); }

} // namespace

TEST_CASE("forward expansion law", "[equational][F]")
{
    Process e = expansion_law_f(P("a.0"), P("b.0"), {});
    CHECK(render(e) == "a.(0 |[]| b.0) + b.(a.0 |[]| 0) + 0");
    CHECK(normalize_f(e) == P("a.b.0 + b.a.0"));

    CHECK(render(expansion_law_f(P("0"), P("0"), {"a"})) == "0 + 0 + 0");
    CHECK(normalize_f(P("0 |[a]| 0")) == P("0"));

    Process x = expansion_law_f(P("a!.b.0"), P("c.0"), {});
    REQUIRE(x.is_prefix());
    CHECK(x.executed());
    CHECK(render(x) == "a!.(b.(0 |[]| c.0) + c.(b.0 |[]| 0) + 0)");

    CHECK_THROWS_AS(expansion_law_f(P("a.0 |[]| b.0"), P("0"), {}), NotNormalizedError);
}

TEST_CASE("F normal forms", "[equational][F]")
{
    CHECK(normalize_f(P("a!.b!.c.0")) == P("b!.c.0"));
    CHECK(normalize_f(P("a.0 |[]| b.0")) == P("a.b.0 + b.a.0"));
    CHECK(normalize_f(P("a!.b.0 + c.0")) == P("a!.b.0"));
    CHECK(normalize_f(P("c.0 + a!.b.0")) == P("a!.b.0"));
    CHECK(normalize_f(P("c.0 |[c]| c.d.0")) == P("c.d.0"));
}

TEST_CASE("F normalization records the axioms used", "[equational][F]")
{
    Trace t;
    normalize_f(P("c.0 + a!.b.0"), &t);
    REQUIRE(t.size() == 2);
    CHECK(t[0] == "A_F,2 @ root");
    CHECK(t[1] == "A_F,7 @ root");

    Trace u;
    CHECK(normalize_f(P("d!.(a!.b.0 + c.0)"), &u) == P("a!.b.0"));
    REQUIRE(u.size() == 2);
    CHECK(u[0] == "A_F,7 @ .");
    CHECK(u[1] == "A_F,6 @ root");
}

TEST_CASE("F normal forms are sound", "[equational][F][enumerated]")
{
    for (const auto& p : enumerate(3, {"a", "b"})) {
        Process q = normalize_f(p);
        REQUIRE(is_fnf(q));
        REQUIRE(is_reachable(q));
        INFO(render(p) << " -> " << render(q));
        REQUIRE(check(p, q, Variant::FBps, false).equivalent);
    }
}

TEST_CASE("the expansion law is sound", "[equational][F][enumerated]")
{
    auto fnfs = enumerate(2, {"a", "b"});
    std::mt19937 rng(5);
    for (int k = 0; k < 200; ++k) {
        Process x = normalize_f(fnfs[rng() % fnfs.size()]);
        Process y = normalize_f(fnfs[rng() % fnfs.size()]);
        SyncSet L = (k % 3 == 0) ? SyncSet{"a"} : SyncSet{};
        Process par = Process::par(L, x, y);
        if (!is_reachable(par))
            continue;
        Process e = expansion_law_f(x, y, L);
        INFO(render(par) << " = " << render(e));
        REQUIRE(check(par, e, Variant::FBps, false).equivalent);
    }
}

TEST_CASE("F canonical forms", "[equational][F]")
{
    CHECK(canonical_f(P("a!.b.0")) == canonical_f(P("c!.b.0")));
    CHECK(canonical_f(P("a.b.0 + a.b.0")) == canonical_f(P("a.b.0")));
    CHECK(canonical_f(P("b.0 + a.0")) == canonical_f(P("a.0 + b.0")));
    CHECK(render(canonical_f(P("x!.(b.0 + a.0 + b.0)"))) == "#past!.(a.0 + b.0)");
    CHECK_THROWS_AS(canonical_f(P("a.0 |[]| b.0")), NotNormalizedError);

    for (const auto& p : enumerate(3, {"a", "b"})) {
        Process c = canonical_f(normalize_f(p));
        REQUIRE(canonical_f(c) == c);
    }
}

TEST_CASE("R normal forms", "[equational][R]")
{
    CHECK(normalize_r(encode(P("a.b.0"))).is_nil());
    CHECK(normalize_r(encode(P("a!.b!.0"))) == U("<a!,{a}>.<b!,{b}>.0"));
    CHECK(normalize_r(encode(P("a!.b.0 + c.0"))) == U("<a!,{a}>.0"));
    CHECK(normalize_r(encode(P("c.0 + a!.b.0"))) == U("<a!,{a}>.0"));

    Trace t;
    normalize_r(encode(P("a!.b.0 + c.0")), &t);
    CHECK(t == Trace{"A_R,4 @ root", "A_R,3 @ +L ."});
}

// The chain left by normalize_r replays, backwards, the incoming
// (action, ready set) labels of the encoding's transition system.
TEST_CASE("R normal forms keep the backward history", "[equational][R][enumerated]")
{
    for (const auto& p : enumerate(3, {"a", "b"})) {
        BrsProcess u = encode_default(p);
        BrsProcess r = normalize_r(u);
        REQUIRE(is_rnf(r));
        BrsLts lts = build_brs_lts(to_initial(u));
        auto s = lts.find(u);
        REQUIRE(s);
        std::vector<std::pair<Action, ActionSet>> back;
        for (StateId cur = *s; !lts.in_edges[cur].empty();) {
            const auto& t = lts.transitions[lts.in_edges[cur].front()];
            REQUIRE(lts.in_edges[cur].size() == 1); // sequential: a tree
            back.emplace_back(act(t.label.proof), t.label.ready);
            cur = t.src;
        }
        std::vector<std::pair<Action, ActionSet>> chain;
        for (const BrsProcess* c = &r; !c->is_nil(); c = &c->cont())
            chain.emplace_back(c->action(), c->ready());
        std::reverse(back.begin(), back.end());
        REQUIRE(chain == back);
    }
}

TEST_CASE("FR normal forms", "[equational][FR]")
{
    CHECK(normalize_fr(encode(P("a.0 + 0"))) == encode(P("a.0")));
    BrsProcess u = encode(P("a!.0 |[]| b.0"));
    CHECK(normalize_fr(u) == u);
    CHECK(is_frnf(u));

    BrsProcess twice = normalize_fr(encode(P("a.0 + a.0")));
    CHECK(summands(twice).size() == 2);
    CHECK(canonical_fr(twice) == encode(P("a.0")));

    // Absorption of an initial alternative by the executed summand.
    CHECK(canonical_fr(U("<a!,{a}>.<b,{b}>.0 + <a,{a}>.<b,{b}>.0")) == U("<a!,{a}>.<b,{b}>.0"));
    CHECK(canonical_fr(normalize_fr(U("<a,{a}>.<b,{b}>.0 + <a!,{a}>.<b,{b}>.0"))) == U("<a!,{a}>.<b,{b}>.0"));
    CHECK_THROWS_AS(canonical_fr(U("<a,{a}>.<b,{b}>.0 + <a!,{a}>.<b,{b}>.0")), NotNormalizedError);
    CHECK(canonical_fr(U("<a!,{a}>.<b,{b}>.0 + <a,{a}>.<c,{c}>.0")) ==
          U("<a!,{a}>.<b,{b}>.0 + <a,{a}>.<c,{c}>.0"));
    CHECK_THROWS_AS(canonical_fr(U("<a,{a}>.<b!,{b}>.0")), NotNormalizedError);
}

TEST_CASE("FR normal forms are sound", "[equational][FR][enumerated]")
{
    for (const auto& p : enumerate(3, {"a", "b"})) {
        BrsProcess u = encode_default(p);
        BrsProcess f = normalize_fr(u);
        REQUIRE(is_frnf(f));
        BrsProcess c = canonical_fr(f);
        REQUIRE(canonical_fr(c) == c);
        REQUIRE(check_brs(u, c, Variant::FRB, false).equivalent);
    }
}

TEST_CASE("deciding equality", "[equational]")
{
    Process par = P("a.0 |[]| b.0"), seq = P("a.b.0 + b.a.0");
    CHECK(prove_eq(par, seq, Theory::F));
    CHECK_FALSE(prove_eq(par, seq, Theory::FR));
    CHECK(prove_eq(P("a!.b.0"), P("c!.b.0"), Theory::F));
    CHECK_FALSE(prove_eq(P("a!.b.0"), P("c!.b.0"), Theory::R));
    for (auto t : {Theory::F, Theory::R, Theory::FR})
        CHECK(prove_eq(P("a!.0 |[]| b.c.0"), P("a!.0 |[]| b.c.0"), t));
    CHECK_THROWS_AS(prove_eq(P("a!.0 |[a]| 0"), P("0"), Theory::F), NotReachableError);
}

TEST_CASE("the arrangement of operands does not matter", "[equational]")
{
    Process x = P("a!.0 |[]| b!.0"), y = P("b!.0 |[]| a!.0");
    CHECK(check(x, y, Variant::FRB).equivalent);
    CHECK(prove_eq(x, y, Theory::FR));
    CHECK(prove_eq(x, y, Theory::R));
    // A single fixed order cannot see this.
    CHECK(canonical_form(x, Theory::FR, PastOrder::Lexicographic) !=
          canonical_form(y, Theory::FR, PastOrder::Lexicographic));
}

TEST_CASE("deciders agree with the checkers", "[equational][enumerated]")
{
    auto ps = enumerate(3, {"a", "b"});
    for (auto t : {Theory::F, Theory::R, Theory::FR}) {
        auto r = agreement(ps, t);
        INFO(to_string(t) << ": " << r.example);
        CHECK(r.ok());
        CHECK(r.checker_classes > 1);
    }
}
