// Acceptance run: one PASS/FAIL line per criterion, with timings.
// Exit status is nonzero when any criterion fails.

#include "revexp.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace revexp;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

struct Outcome {
    bool pass = true;
    std::string detail;
};

void run(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body)
{
    auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    bool in_time = budget_s <= 0 || s < budget_s;
    bool pass = o.pass && in_time;
    if (!pass)
        ++failures;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs", s);
    std::cout << (pass ? "PASS" : "FAIL") << "  [" << id << "] " << title << "  (" << timing;
    if (budget_s > 0)
        std::cout << ", limit " << budget_s << "s";
    std::cout << ")";
    if (!o.detail.empty())
        std::cout << "  " << o.detail;
    if (!in_time)
        std::cout << "  over time limit";
    std::cout << std::endl;
}

void info(const std::string& s) { std::cout << "      info: " << s << std::endl; }

const Variant all_variants[] = {Variant::FB, Variant::FBps, Variant::RB, Variant::FRB};

// Sets inside braces are printed in no fixed order; sort their elements and
// drop whitespace before comparing.
std::string normalized(std::string s)
{
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    std::string out;
    for (std::size_t i = 0; i < s.size();) {
        if (s[i] != '{') {
            out += s[i++];
            continue;
        }
        std::size_t j = s.find('}', i);
        std::vector<std::string> items;
        std::stringstream in(s.substr(i + 1, j - i - 1));
        for (std::string x; std::getline(in, x, ',');)
            items.push_back(x);
        std::sort(items.begin(), items.end());
        out += '{';
        for (std::size_t k = 0; k < items.size(); ++k)
            out += (k ? "," : "") + items[k];
        out += '}';
        i = j + 1;
    }
    return out;
}

// Classes of `ps` under a variant, computed on the union of their systems.
struct Classes {
    std::vector<std::size_t> block; // per process
    std::map<std::size_t, std::vector<std::size_t>> members;
};

Classes classes(const std::vector<Process>& ps, Variant v)
{
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
    Partition part = refine(g, v);
    Classes c;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        c.block.push_back(part[node.at(ps[i])]);
        c.members[c.block.back()].push_back(i);
    }
    return c;
}

// Pairs: half drawn from within one class, half uniformly at random.
std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(const Classes& c, std::size_t n, std::mt19937& rng)
{
    std::vector<const std::vector<std::size_t>*> multi;
    for (const auto& [b, m] : c.members)
        if (m.size() > 1)
            multi.push_back(&m);
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t total = c.block.size();
    while (out.size() < n) {
        if (out.size() % 2 == 0 && !multi.empty()) {
            const auto& m = *multi[rng() % multi.size()];
            std::size_t i = m[rng() % m.size()], j = m[rng() % m.size()];
            if (i != j)
                out.emplace_back(i, j);
        } else {
            std::size_t i = rng() % total, j = rng() % total;
            if (i != j)
                out.emplace_back(i, j);
        }
    }
    return out;
}

bool covered(const std::vector<BrsProcess>& xs, const std::vector<BrsProcess>& ys, Variant v)
{
    for (const auto& x : xs) {
        bool found = false;
        for (const auto& y : ys)
            if (check_brs(x, y, v, false).equivalent) {
                found = true;
                break;
            }
        if (!found)
            return false;
    }
    return true;
}

std::string pct(std::size_t k, std::size_t n)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", n ? 100.0 * k / n : 100.0);
    return buf;
}

} // namespace

int main()
{
    std::cout << "acceptance run" << std::endl;

    run(1, "verdicts for a.0 |[]| b.0 versus a.b.0 + b.a.0", 1.0, [] {
        Process p = parse("a.0 |[]| b.0"), q = parse("a.b.0 + b.a.0");
        bool fb = check(p, q, Variant::FB, false).equivalent;
        bool fbps = check(p, q, Variant::FBps, false).equivalent;
        // Reverse variants compare the systems as wholes: from the initial
        // states alone no backward move is possible on either side.
        bool rb = check_systems(p, q, Variant::RB);
        bool frb = check_systems(p, q, Variant::FRB);
        bool rb_states = check(p, q, Variant::RB, false).equivalent;
        info(std::string("initial states alone under RB: ") + (rb_states ? "equivalent" : "not equivalent"));
        Outcome o;
        o.pass = fb && fbps && !rb && !frb;
        o.detail = std::string("FB ") + (fb ? "eq" : "neq") + ", FBps " + (fbps ? "eq" : "neq") + ", RB " +
                   (rb ? "eq" : "neq") + ", FRB " + (frb ? "eq" : "neq");
        return o;
    });

    run(2, "golden encodings", 0, [] {
        const std::pair<const char*, const char*> golden[] = {
            {"a.b.0 + b.a.0", "<a,{a}>.<b,{b}>.0 + <b,{b}>.<a,{a}>.0"},
            {"a!.b!.0", "<a!,{a}>.<b!,{b}>.0"},
            {"a.0 |[]| b.0", "<a,{a}>.<b,{a,b}>.0 + <b,{b}>.<a,{a,b}>.0"},
            {"a!.0 |[]| b.0", "<a!,{a}>.<b,{a,b}>.0 + <b,{b}>.<a,{b,a}>.0"},
            {"a!.0 |[]| b!.0", "<a!,{a}>.<b!,{a,b}>.0 + <b,{b}>.<a,{b,a}>.0"},
            {"(a.0 + c.0) |[]| (b.0 + d.0)",
             "<a,{a}>.(<b,{a,b}>.0 + <d,{a,d}>.0) + <c,{c}>.(<b,{c,b}>.0 + <d,{c,d}>.0) + "
             "<b,{b}>.(<a,{b,a}>.0 + <c,{b,c}>.0) + <d,{d}>.(<a,{d,a}>.0 + <c,{d,c}>.0)"},
            {"a!.c!.0 |[c]| c!.b.0", "<a!,{a}>.<c!,{c}>.<b,{b}>.0"},
        };
        Outcome o;
        std::size_t ok = 0;
        for (const auto& [src, want] : golden) {
            std::string got = render(encode(parse(src)));
            if (normalized(got) == normalized(want))
                ++ok;
            else if (o.detail.empty())
                o.detail = std::string(src) + " gave " + got;
        }
        o.pass = ok == std::size(golden);
        o.detail = std::to_string(ok) + "/" + std::to_string(std::size(golden)) + " match" +
                   (o.detail.empty() ? "" : "; " + o.detail);
        return o;
    });

    run(3, "transition correspondence, alphabet {a,b,c}, depth <= 3", 60.0, [] {
        auto roots = initial_terms({"a", "b", "c"}, 3);
        auto s = correspondence_suite(roots);
        Outcome o;
        o.pass = s.violations == 0;
        o.detail = std::to_string(s.roots) + " roots, " + std::to_string(s.transitions) + " transitions, " +
                   std::to_string(s.violations) + " violations";
        if (!s.first_violation.empty())
            o.detail += "; " + s.first_violation;
        return o;
    });

    run(4, "reverse verdicts agree with verdicts on encodings (600 pairs per variant)", 0, [] {
        auto ps = enumerate(4, {"a", "b"});
        std::mt19937 rng(7);
        Outcome o;
        for (Variant v : {Variant::RB, Variant::FRB}) {
            Classes c = classes(ps, v);
            auto pairs = sample_pairs(c, 600, rng);
            std::size_t agree = 0, agree_lex = 0, eq = 0;
            for (auto [i, j] : pairs) {
                bool direct = check(ps[i], ps[j], v, false).equivalent;
                eq += direct;
                auto e1 = encodings(ps[i]), e2 = encodings(ps[j]);
                bool enc = covered(e1, e2, v) && covered(e2, e1, v);
                agree += enc == direct;
                agree_lex += check_brs(encode_default(ps[i]), encode_default(ps[j]), v, false).equivalent == direct;
            }
            info(std::string(to_string(v)) + ": " + std::to_string(eq) + " of " + std::to_string(pairs.size()) +
                 " pairs equivalent; single lexicographic encoding agrees on " + std::to_string(agree_lex) + " (" +
                 pct(agree_lex, pairs.size()) + ")");
            o.pass = o.pass && agree == pairs.size();
            o.detail += std::string(o.detail.empty() ? "" : ", ") + to_string(v) + " " + std::to_string(agree) + "/" +
                        std::to_string(pairs.size());
        }
        o.detail += " agree (encodings over all histories)";
        return o;
    });

    run(5, "axiomatic equality agrees with the checkers on enumerate(5, {a,b})", 300.0, [] {
        auto ps = enumerate(5, {"a", "b"});
        Outcome o;
        o.detail = std::to_string(ps.size()) + " processes;";
        for (Theory t : {Theory::F, Theory::R, Theory::FR}) {
            auto r = agreement(ps, t);
            o.pass = o.pass && r.ok();
            o.detail += std::string(" ") + to_string(t) + "/" + to_string(r.variant) + " " +
                        std::to_string(r.checker_classes) + " classes " + (r.ok() ? "ok" : "MISMATCH");
            if (!r.ok())
                info(r.example);
        }
        for (Theory t : {Theory::R, Theory::FR}) {
            auto r = agreement(ps, t, PastOrder::Lexicographic);
            info(std::string(to_string(t)) + " with lexicographic encodings only: " + std::to_string(r.incomplete) +
                 " classes split, " + std::to_string(r.unsound) + " forms shared by distinct classes");
        }
        return o;
    });

    run(6, "congruence under parallel contexts (200 pairs per variant)", 0, [] {
        auto ps = enumerate(3, {"a", "b"});
        auto contexts = enumerate(2, {"a", "b"}, 2);
        std::vector<SyncSet> syncs{{}, {"a"}, {"b"}, {"a", "b"}};
        std::mt19937 rng(11);
        Outcome o;
        for (Variant v : all_variants) {
            Classes c = classes(ps, v);
            std::vector<const std::vector<std::size_t>*> multi;
            for (const auto& [b, m] : c.members)
                if (m.size() > 1)
                    multi.push_back(&m);
            std::size_t tried = 0, kept = 0;
            while (tried < 200) {
                const auto& m = *multi[rng() % multi.size()];
                std::size_t i = m[rng() % m.size()], j = m[rng() % m.size()];
                if (i == j)
                    continue;
                const Process& p1 = ps[i];
                const Process& p2 = ps[j];
                const Process& r = contexts[rng() % contexts.size()];
                const SyncSet& L = syncs[rng() % syncs.size()];
                bool on_left = rng() % 2;
                Process c1 = on_left ? Process::par(L, p1, r) : Process::par(L, r, p1);
                Process c2 = on_left ? Process::par(L, p2, r) : Process::par(L, r, p2);
                if (!is_reachable(c1) || !is_reachable(c2))
                    continue;
                ++tried;
                kept += check(c1, c2, v, false).equivalent;
            }
            o.pass = o.pass && kept == tried;
            o.detail += std::string(o.detail.empty() ? "" : ", ") + to_string(v) + " " + std::to_string(kept) + "/" +
                        std::to_string(tried);
        }
        return o;
    });

    run(7, "equivalent pairs satisfy the ready-set conditions", 0, [] {
        auto ps = enumerate(5, {"a", "b"});
        Outcome o;
        for (Variant v : all_variants) {
            Classes c = classes(ps, v);
            std::size_t pairs = 0, bad = 0;
            for (const auto& [b, m] : c.members)
                for (std::size_t i = 0; i < m.size(); ++i)
                    for (std::size_t j = i + 1; j < m.size(); ++j) {
                        ++pairs;
                        bad += !necessary_check(ps[m[i]], ps[m[j]], v);
                    }
            o.pass = o.pass && bad == 0;
            o.detail += std::string(o.detail.empty() ? "" : ", ") + to_string(v) + " " + std::to_string(pairs) +
                        " pairs/" + std::to_string(bad) + " violations";
        }
        return o;
    });

    run(8, "encodings preserve initiality and backward ready sets", 0, [] {
        auto ps = enumerate(4, {"a", "b", "c"}, 3);
        std::size_t n = 0, init_ok = 0, side = 0, brs_ok = 0;
        for (const auto& p : ps) {
            bool applies = brs_preservation_applies(p);
            for (const auto& u : encodings(p)) {
                ++n;
                init_ok += u.initial() == p.initial();
                if (applies) {
                    ++side;
                    brs_ok += brs(u) == brs(p);
                }
            }
        }
        Process m = parse("a!.0 |[]| b!.0");
        bool mismatch = brs(m) == ActionSet{"a", "b"} && brs(encode(m)) == ActionSet{"b"};
        Outcome o;
        o.pass = init_ok == n && brs_ok == side && mismatch;
        o.detail = "initiality " + std::to_string(init_ok) + "/" + std::to_string(n) + ", brs " +
                   std::to_string(brs_ok) + "/" + std::to_string(side) + ", a!.0 |[]| b!.0: {a,b} vs " +
                   render_set(brs(encode(m)));
        return o;
    });

    run(9, "loop and tree properties of built systems", 0, [] {
        auto roots = initial_terms({"a", "b"}, 3);
        std::size_t systems = 0, loop_bad = 0, seq = 0, tree_bad = 0;
        auto inspect = [&](const auto& lts, bool sequential) {
            ++systems;
            seq += sequential;
            for (StateId s = 0; s < lts.size(); ++s) {
                loop_bad += lts.initial_flags[s] != lts.in_edges[s].empty();
                if (sequential)
                    tree_bad += s != lts.root && lts.in_edges[s].size() != 1;
            }
        };
        for (const auto& r : roots) {
            inspect(build_lts(r), is_sequential(r));
            inspect(build_brs_lts(encode(r)), true);
        }
        Outcome o;
        o.pass = loop_bad == 0 && tree_bad == 0;
        o.detail = std::to_string(systems) + " systems (" + std::to_string(seq) + " sequential), " +
                   std::to_string(loop_bad) + " loop and " + std::to_string(tree_bad) + " tree violations";
        return o;
    });

    std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
              << std::endl;
    return failures ? 1 : 0;
}
