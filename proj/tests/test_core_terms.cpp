#include "revexp/core_terms.hpp"
#include "revexp/enumerate.hpp"
#include "revexp/proved_lts.hpp"
#include "revexp/syntax.hpp"

#include <catch_amalgamated.hpp>

using namespace revexp;

namespace {

Process P(const char* s) { return parse(s); }
Process raw(const char* s) { return parse(s, ParseOptions{true}); }
ActionSet S(std::initializer_list<const char*> xs) { return ActionSet(xs.begin(), xs.end()); }

} // namespace

TEST_CASE("initiality", "[core]")
{
    CHECK(is_initial(Process::nil()));
    CHECK_FALSE(is_initial(P("a!.b.0")));
    CHECK(is_initial(P("a.0 |[]| b.0")));
}

TEST_CASE("well-formedness", "[core]")
{
    CHECK(is_wellformed(P("a!.b.0")));
    CHECK_FALSE(is_wellformed(raw("b.a!.0")));
    CHECK_FALSE(is_wellformed(raw("a!.0 + b!.0")));
    CHECK(is_wellformed(Process::nil()));
    CHECK(is_wellformed(P("a.0 + b!.0")));
    CHECK(is_wellformed(P("a!.0 |[]| b!.0")));
    CHECK(wellformedness_violation(raw("a!.0 + b!.0")).find("both sides of +") != std::string::npos);
}

TEST_CASE("initial processes are well-formed", "[core][enumerated]")
{
    for (const auto& p : initial_terms({"a", "b"}, 2))
        REQUIRE(is_wellformed(p));
}

TEST_CASE("reachability", "[core]")
{
    CHECK_FALSE(is_reachable(P("a!.0 |[a]| 0")));
    CHECK(is_reachable(P("a.b.0 |[a]| a.0")));
    CHECK(is_reachable(P("a!.0 |[]| b!.0")));
    CHECK(is_reachable(P("c!.0 |[c]| c!.0")));
    CHECK_FALSE(is_reachable(P("c!.0 |[c]| c.0")));
}

TEST_CASE("forward ready sets", "[core]")
{
    CHECK(frs(P("a.0 + b.0")) == S({"a", "b"}));
    CHECK(frs(P("a.0 |[a]| 0")).empty());
    CHECK(frs(P("a!.b.0")) == S({"b"}));
    CHECK(frs(P("a.0 |[a]| a.b.0")) == S({"a"}));
}

TEST_CASE("backward ready sets", "[core]")
{
    CHECK(brs(P("a!.0 |[]| b!.0")) == S({"a", "b"}));
    CHECK(brs(P("a!.b.0 + b.a.0")) == S({"a"}));
    CHECK(brs(P("a!.b!.0")) == S({"b"}));
    CHECK(brs(P("a.b.0 |[]| c.0")).empty());
}

// Ready sets must agree with the transitions actually present in the LTS.
TEST_CASE("ready sets agree with the semantics", "[core][enumerated]")
{
    for (const auto& root : initial_terms({"a", "b"}, 2)) {
        Lts lts = build_lts(root);
        for (StateId s = 0; s < lts.size(); ++s) {
            ActionSet out, in;
            for (auto& [t, _] : forward_steps(lts.states[s]))
                out.insert(act(t));
            for (auto e : lts.in_edges[s])
                in.insert(act(lts.transitions[e].label));
            REQUIRE(frs(lts.states[s]) == out);
            REQUIRE(brs(lts.states[s]) == in);
            REQUIRE(is_initial(lts.states[s]) == in.empty());
        }
    }
}

TEST_CASE("rolling back to the initial process", "[core]")
{
    CHECK(to_initial(P("a!.b.0")) == P("a.b.0"));
    CHECK(to_initial(P("a!.0 |[]| b!.0")) == P("a.0 |[]| b.0"));
    Process p = P("a.b.0 + c.0");
    CHECK(to_initial(p) == p);
    for (const auto& q : enumerate(3, {"a", "b"})) {
        REQUIRE(is_initial(to_initial(q)));
        REQUIRE(to_initial(to_initial(q)) == to_initial(q));
    }
}

TEST_CASE("act extracts the underlying action", "[core]")
{
    using T = ProofTerm;
    CHECK(act(T::par_l(T::plus_l(T::act("a")))) == "a");
    CHECK(act(T::syn(T::dot(T::act("c")), T::act("c"))) == "c");
    CHECK_THROWS_AS(act(T::syn(T::act("a"), T::act("b"))), UndefinedSyncError);
}

TEST_CASE("upd marks the addressed prefix", "[core]")
{
    using T = ProofTerm;
    CHECK(upd(P("a.0"), T::act("a")) == P("a!.0"));
    CHECK(upd(P("a.0"), T::act("b")) == P("a.0"));
    CHECK(upd(P("a.0 |[]| b.0"), T::par_l(T::act("a"))) == P("a!.0 |[]| b.0"));
    CHECK(upd(P("a!.b.0"), T::dot(T::act("b"))) == P("a!.b!.0"));
    CHECK(upd(P("c.0 |[c]| c.d.0"), T::syn(T::act("c"), T::act("c"))) == P("c!.0 |[c]| c!.d.0"));
}

TEST_CASE("upd agrees with forward steps", "[core][enumerated]")
{
    for (const auto& root : initial_terms({"a", "b"}, 2)) {
        Lts lts = build_lts(root);
        for (const auto& t : lts.transitions)
            REQUIRE(upd(lts.states[t.src], t.label) == lts.states[t.dst]);
    }
}

TEST_CASE("size", "[core]")
{
    CHECK(size(Process::nil()) == 0);
    CHECK(size(P("a.b.0 + c.0")) == 2);
    CHECK(size(P("a.0 |[]| b.0")) == 2);
    CHECK(size(P("a!.b.0")) == 2);
}

// size bounds every maximal forward trace; checked by exhaustive search.
TEST_CASE("size bounds trace length", "[core][enumerated]")
{
    auto longest = [](auto&& self, const Process& p) -> std::size_t {
        std::size_t best = 0;
        for (auto& [t, q] : forward_steps(p))
            best = std::max(best, 1 + self(self, q));
        return best;
    };
    for (const auto& p : initial_terms({"a", "b"}, 2))
        REQUIRE(longest(longest, p) <= size(p));
}

TEST_CASE("fired addresses", "[core]")
{
    using T = ProofTerm;
    auto a = fired_addresses(T::par_r(T::plus_l(T::dot(T::act("a")))));
    REQUIRE(a.size() == 1);
    CHECK(a[0] == Address{1, 0, 0});
    auto s = fired_addresses(T::syn(T::act("c"), T::dot(T::act("c"))));
    REQUIRE(s.size() == 2);
    CHECK(s[0] == Address{0});
    CHECK(s[1] == Address{1, 0});
}

TEST_CASE("structural equality and hashing", "[core]")
{
    CHECK(P("a.0 |[a,b]| b.0") == P("a.0 |[b,a]| b.0"));
    CHECK_FALSE(P("a.0 + b.0") == P("b.0 + a.0"));
    CHECK(ProcessHash{}(P("a!.b.0")) == ProcessHash{}(P("a!.b.0")));
}
