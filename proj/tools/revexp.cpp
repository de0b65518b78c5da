// Command-line front end.
//
// Exit status: 0 equivalent / success, 1 not equivalent, 2 error.

#include "revexp.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <string>
#include <vector>

using namespace revexp;

namespace {

struct Globals {
    bool unicode = false;
    bool allow_illformed = false;
};

Process read_process(const std::string& src, const Globals& g)
{
    ParseOptions opt;
    opt.allow_illformed = g.allow_illformed;
    return parse(src, opt);
}

Variant parse_variant(const std::string& s)
{
    if (s == "fb")
        return Variant::FB;
    if (s == "fbps")
        return Variant::FBps;
    if (s == "rb")
        return Variant::RB;
    return Variant::FRB;
}

Theory parse_theory(const std::string& s)
{
    if (s == "f")
        return Theory::F;
    if (s == "r")
        return Theory::R;
    return Theory::FR;
}

std::unique_ptr<ExecutionOrder> parse_order(const std::string& s, const Process& p)
{
    if (s == "lex")
        return std::make_unique<LexicographicOrder>(default_order(p));
    if (s.rfind("file:", 0) == 0)
        return std::make_unique<HistoryOrder>(HistoryOrder::from_file(s.substr(5)));
    throw Error("unknown order '" + s + "' (expected lex or file:<path>)");
}

SyncSet to_sync(const std::vector<std::string>& xs)
{
    SyncSet L;
    for (const auto& x : xs) {
        if (x.empty())
            continue;
        if (x == tau_action)
            throw UndefinedSyncError("tau cannot be synchronized");
        L.insert(x);
    }
    return L;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bisimilarity checking, encodings and axiomatic equality for reversible processes"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--unicode", g.unicode, "Print executed actions with a dagger instead of '!'");
    app.add_flag("--allow-illformed", g.allow_illformed, "Accept ill-formed terms (for predicate testing only)");

    std::string p1, p2, variant = "frb", format = "dot", order = "lex", theory = "f", law = "brs";
    std::vector<std::string> sync, alphabet{"a", "b"};
    bool witness = false, systems = false, brs_lts = false, trace = false, count_only = false;
    std::size_t max_size = 3;

    auto* check_cmd = app.add_subcommand("check", "Decide bisimilarity of two processes");
    check_cmd->add_option("--variant", variant, "fb, fbps, rb or frb")
        ->check(CLI::IsMember({"fb", "fbps", "rb", "frb"}))
        ->required();
    check_cmd->add_option("P1", p1)->required();
    check_cmd->add_option("P2", p2)->required();
    check_cmd->add_flag("--witness", witness, "Print the bisimulation classes or the distinguishing step");
    check_cmd->add_flag("--systems", systems,
                        "Compare the whole transition systems: every reachable state must have a counterpart");

    auto* lts_cmd = app.add_subcommand("lts", "Print the transition system of a process");
    lts_cmd->add_option("P", p1)->required();
    lts_cmd->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    lts_cmd->add_flag("--brs", brs_lts, "Use the ready-set encoding of the process");

    auto* encode_cmd = app.add_subcommand("encode", "Print the ready-set encoding of a process");
    encode_cmd->add_option("P", p1)->required();
    encode_cmd->add_option("--order", order, "lex or file:<path> (one proof term per line, in execution order)");

    auto* normalize_cmd = app.add_subcommand("normalize", "Print a normal form");
    normalize_cmd->add_option("--theory", theory, "f, r or fr")->check(CLI::IsMember({"f", "r", "fr"}))->required();
    normalize_cmd->add_option("P", p1)->required();

    auto* prove_cmd = app.add_subcommand("prove", "Decide equality in an axiom system");
    prove_cmd->add_option("--theory", theory, "f, r or fr")->check(CLI::IsMember({"f", "r", "fr"}))->required();
    prove_cmd->add_option("P1", p1)->required();
    prove_cmd->add_option("P2", p2)->required();
    prove_cmd->add_flag("--trace", trace, "Print the axioms applied");

    auto* expand_cmd = app.add_subcommand("expand", "Eliminate a parallel composition");
    expand_cmd->add_option("P1", p1)->required();
    expand_cmd->add_option("P2", p2)->required();
    expand_cmd->add_option("--sync", sync, "Synchronization set")->delimiter(',');
    expand_cmd->add_option("--law", law, "brs (encoded expansion) or f (forward expansion law on F-normal forms)")
        ->check(CLI::IsMember({"brs", "f"}));

    auto* enum_cmd = app.add_subcommand("enumerate", "List reachable processes up to a size");
    enum_cmd->add_option("--max-size", max_size)->required();
    enum_cmd->add_option("--alphabet", alphabet)->delimiter(',');
    enum_cmd->add_flag("--count-only", count_only);

    auto* self_cmd = app.add_subcommand("selftest", "Run the oracle-agreement and correspondence suites");
    self_cmd->add_option("--max-size", max_size)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    RenderOptions ro;
    ro.unicode = g.unicode;

    try {
        if (*check_cmd) {
            Process x = read_process(p1, g), y = read_process(p2, g);
            if (systems) {
                bool eq = check_systems(x, y, parse_variant(variant));
                std::cout << (eq ? "equivalent" : "not equivalent") << "\n";
                return eq ? 0 : 1;
            }
            Verdict v = check(x, y, parse_variant(variant), witness);
            std::cout << (v.equivalent ? "equivalent" : "not equivalent") << "\n";
            if (witness && v.equivalent) {
                for (std::size_t i = 0; i < v.witness.size(); ++i) {
                    std::cout << "class " << i << ":";
                    for (const auto& s : v.witness[i])
                        std::cout << "  " << s;
                    std::cout << "\n";
                }
            } else if (witness && v.counterexample) {
                const auto& c = *v.counterexample;
                std::cout << "distinguished in round " << c.round << " (" << c.direction << "): " << c.detail << "\n";
            }
            return v.equivalent ? 0 : 1;
        }
        if (*lts_cmd) {
            Process p = read_process(p1, g);
            ExportFormat f = format == "json" ? ExportFormat::Json : ExportFormat::Dot;
            if (brs_lts)
                std::cout << export_lts(build_brs_lts(to_initial(encode_default(p))), f, ro);
            else
                std::cout << export_lts(build_lts(to_initial(p)), f, ro);
            return 0;
        }
        if (*encode_cmd) {
            Process p = read_process(p1, g);
            std::cout << render(encode(p, *parse_order(order, p)), ro) << "\n";
            return 0;
        }
        if (*normalize_cmd) {
            Process p = read_process(p1, g);
            if (!is_reachable(p))
                throw NotReachableError("'" + render(p) + "' is not reachable");
            switch (parse_theory(theory)) {
            case Theory::F:
                std::cout << render(normalize_f(p), ro) << "\n";
                break;
            case Theory::R:
                std::cout << render(normalize_r(encode_default(p)), ro) << "\n";
                break;
            case Theory::FR:
                std::cout << render(normalize_fr(encode_default(p)), ro) << "\n";
                break;
            }
            return 0;
        }
        if (*prove_cmd) {
            Trace t;
            bool eq = prove_eq(read_process(p1, g), read_process(p2, g), parse_theory(theory), PastOrder::AllHistories,
                               trace ? &t : nullptr);
            std::cout << (eq ? "equal" : "not equal") << "\n";
            for (std::size_t i = 0; i < t.size(); ++i)
                std::cout << (i + 1) << ". " << t[i] << "\n";
            return eq ? 0 : 1;
        }
        if (*expand_cmd) {
            Process x = read_process(p1, g), y = read_process(p2, g);
            SyncSet L = to_sync(sync);
            if (law == "f")
                std::cout << render(expansion_law_f(normalize_f(x), normalize_f(y), L), ro) << "\n";
            else
                std::cout << render(expand_parallel(x, y, L, default_order(x)), ro) << "\n";
            return 0;
        }
        if (*enum_cmd) {
            auto ps = enumerate(max_size, alphabet);
            if (count_only)
                std::cout << ps.size() << "\n";
            else
                for (const auto& p : ps)
                    std::cout << render(p, ro) << "\n";
            return 0;
        }
        if (*self_cmd) {
            auto ps = enumerate(max_size, {"a", "b"});
            bool ok = true;
            std::cout << ps.size() << " processes\n";
            for (Theory t : {Theory::F, Theory::R, Theory::FR}) {
                auto r = agreement(ps, t);
                ok = ok && r.ok();
                std::cout << (r.ok() ? "ok   " : "FAIL ") << to_string(t) << " vs " << to_string(r.variant) << ": "
                          << r.checker_classes << " classes, " << r.incomplete << " incomplete, " << r.unsound
                          << " unsound\n";
                if (!r.ok())
                    std::cout << "     " << r.example << "\n";
            }
            auto c = correspondence_suite(ps);
            ok = ok && c.violations == 0;
            std::cout << (c.violations == 0 ? "ok   " : "FAIL ") << "correspondence: " << c.roots << " roots, "
                      << c.transitions << " transitions, " << c.violations << " violations\n";
            if (c.violations)
                std::cout << "     " << c.first_violation << "\n";
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
