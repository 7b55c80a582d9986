// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure, exit code 3 if a theorem-guaranteed postcondition is falsified.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

#include "support/test_support.hpp"

using namespace convg;
using convg::testing::all_topologies;
using convg::testing::mixing_triples;

namespace {

std::string g_cli_path;
std::string g_fixtures_dir;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool cond, const std::string& what) {
    if (!cond) throw Failure(what);
}

Preconvergence fixture(const std::string& name) {
    return parse_space(convg::testing::read_file(g_fixtures_dir + "/" + name + ".json")).space;
}

// ---------------------------------------------------------------- criterion 1
void criterion_filter_principality() {
    for (int n = 0; n <= 3; ++n) {
        int subsets = 1 << n;
        long long families = 1ll << subsets;
        std::set<long long> proper_filters;
        for (long long fam = 1; fam < families; ++fam) {
            if (fam & 1) continue;  // ∅ must not belong
            bool ok = true;
            for (int s = 0; s < subsets && ok; ++s) {
                if (!((fam >> s) & 1)) continue;
                for (int t = 0; t < subsets && ok; ++t) {
                    if (((fam >> t) & 1) && !((fam >> (s & t)) & 1)) ok = false;  // ∩-closure
                    if ((s & t) == s && ((fam >> s) & 1) && !((fam >> t) & 1)) ok = false;  // upset
                }
            }
            if (ok) proper_filters.insert(fam);
        }
        std::set<long long> upsets;
        for (std::uint32_t base = 1; base < (1u << n); ++base) {
            long long fam = 0;
            for (int s = 0; s < subsets; ++s)
                if ((base & static_cast<std::uint32_t>(s)) == base) fam |= 1ll << s;
            upsets.insert(fam);
        }
        expect(proper_filters == upsets,
               "families with the filter laws differ from the principal upsets at n=" +
                   std::to_string(n));
    }
}

// ---------------------------------------------------------------- criterion 2
void check_oracle_agreement(const Preconvergence& L) {
    expect(check_axiom(L, Axiom::Centered).holds == convg::testing::net_oracle_centered(L),
           "centered reduction disagreed with the net oracle");
    bool isotone = check_axiom(L, Axiom::Isotone).holds;
    expect(isotone == convg::testing::net_oracle_isotone(L),
           "isotone reduction disagreed with the net oracle");
    if (isotone) {
        expect(check_axiom(L, Axiom::Stable).holds == convg::testing::net_oracle_stable(L),
               "stable reduction disagreed with the net oracle on an isotone table");
        expect(check_axiom(L, Axiom::Kent).holds == convg::testing::net_oracle_kent(L),
               "kent reduction disagreed with the net oracle on an isotone table");
    }
}

void criterion_net_filter_bridge() {
    for (int n = 1; n <= 3; ++n) {
        CarrierRef c = generated_carrier(n);
        for (std::uint32_t base = 1; base <= c->full_mask(); ++base) {
            PrincipalFilter f{PointSet(c, base)};
            expect(induced_filter(canonical_net(f)) == f,
                   "canonical net failed to recover its filter");
        }
    }
    for (int n = 1; n <= 2; ++n) {
        SpaceEnumerator en(n, {});
        while (auto L = en.next()) check_oracle_agreement(*L);
    }
    for (std::uint64_t seed = 0; seed < 500; ++seed)
        check_oracle_agreement(random_space(3, seed, {}));
}

// ---------------------------------------------------------------- criterion 3
void criterion_topology_round_trip() {
    std::vector<size_t> expected_counts{1, 1, 4, 29};
    for (int n = 0; n <= 3; ++n) {
        auto topologies = all_topologies(n);
        expect(topologies.size() == expected_counts[static_cast<size_t>(n)],
               "labeled topology count is off at n=" + std::to_string(n));
        CarrierRef c = generated_carrier(n);
        for (const auto& opens : topologies) {
            FiniteTopology tau(c, opens);
            Preconvergence L = from_topology(tau);
            expect(open_sets(L).opens() == tau.opens(), "open_sets(from_topology) is not the identity");
            AxiomReport r = axiom_report(L);
            expect(r.centered.holds && r.isotone.holds && r.stable.holds,
                   "a topological convergence failed the limit axioms");
        }
    }
}

// ---------------------------------------------------------------- criterion 4
void criterion_induced_topology_and_adherence_algebra() {
    int spaces = 0;
    for (int n = 1; n <= 5; ++n) {
        for (std::uint64_t seed = 0; seed < 200; ++seed, ++spaces) {
            Preconvergence L = random_space(n, seed * 977 + static_cast<std::uint64_t>(n), {});
            FiniteTopology o = open_sets(L);
            expect(FiniteTopology::is_topology(n, o.opens()), "induced opens are not a topology");
            std::uint32_t full = L.full_mask();
            std::vector<std::uint32_t> adh(static_cast<size_t>(full) + 1),
                inh(static_cast<size_t>(full) + 1);
            for (std::uint32_t s = 0; s <= full; ++s) {
                adh[s] = adherence_bits(L, s);
                inh[s] = inherence_bits(L, s);
            }
            for (std::uint32_t a = 0; a <= full; ++a)
                for (std::uint32_t b = 0; b <= full; ++b) {
                    expect(adh[a | b] == (adh[a] | adh[b]), "adherence is not union-additive");
                    expect(inh[a & b] == (inh[a] & inh[b]),
                           "inherence is not intersection-multiplicative");
                }
        }
    }
    expect(spaces >= 1000, "corpus too small");
}

// ---------------------------------------------------------------- criterion 5
void criterion_p3_witness() {
    Preconvergence p3 = fixture("P3");
    AxiomReport r = axiom_report(p3);
    expect(r.centered.holds && r.isotone.holds && r.stable.holds,
           "P3 must satisfy the limit axioms");
    expect(!r.topological.holds, "P3 must not be topological");
    Preconvergence top = topological_modification(p3);
    std::uint32_t bc = PointSet::of(p3.carrier(), {"b", "c"}).bits();
    expect(p3.limits_bits(bc) == PointSet::of(p3.carrier(), {"b"}).bits(),
           "P3 limits at {b,c} must be {b}");
    expect(top.limits_bits(bc) == PointSet::of(p3.carrier(), {"a", "b"}).bits(),
           "the topological modification of P3 must converge to {a,b} at {b,c}");
    expect(p3.limits_bits(bc) != top.limits_bits(bc), "the recorded witness must separate the tables");
}

// ---------------------------------------------------------------- criterion 6
void check_limit_modification_laws(const Preconvergence& L,
                                   const std::vector<Preconvergence>& coarser_candidates) {
    Preconvergence mod = limit_modification(L);
    expect(axiom_report(mod).is_limit(), "the limit modification is not a limit convergence");
    expect(coarser_or_equal(mod, L), "the limit modification is not coarser-or-equal");
    expect(limit_modification(mod) == mod, "the limit modification is not idempotent");
    for (const auto& M : coarser_candidates) {
        if (!coarser_or_equal(M, L)) continue;
        expect(coarser_or_equal(M, mod),
               "a limit convergence below L escaped the limit modification");
    }
}

void criterion_limit_modification() {
    std::vector<Preconvergence> all_limits_2;
    {
        SpaceEnumerator en(2, {Axiom::Centered, Axiom::Isotone, Axiom::Stable});
        while (auto M = en.next()) all_limits_2.push_back(*M);
    }
    SpaceEnumerator en(2, {Axiom::Centered, Axiom::Isotone});
    while (auto L = en.next()) check_limit_modification_laws(*L, all_limits_2);

    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        Rng rng = Rng::stream(1606, seed);
        Preconvergence L = random_space_stream(3, rng, {Axiom::Centered, Axiom::Isotone});
        std::vector<Preconvergence> candidates;
        candidates.push_back(limit_modification(L));
        for (int i = 0; i < 8; ++i) {
            Preconvergence R =
                random_space_stream(3, rng, {Axiom::Centered, Axiom::Isotone, Axiom::Stable});
            // inf of convergences is a convergence; its limit modification is
            // a limit convergence coarser than L.
            candidates.push_back(limit_modification(lattice_inf({L, R}, L.carrier())));
            candidates.push_back(R);
        }
        check_limit_modification_laws(L, candidates);
    }
}

// ---------------------------------------------------------------- criterion 7
void criterion_exponential_law() {
    std::vector<Preconvergence> spaces;
    spaces.push_back(random_space(1, 0, {Axiom::Centered, Axiom::Isotone, Axiom::Stable}));
    SpaceEnumerator en(2, {Axiom::Centered, Axiom::Isotone, Axiom::Stable});
    while (auto L = en.next()) spaces.push_back(*L);

    for (const auto& X : spaces)
        for (const auto& Y : spaces) {
            FunctionSpace fs = continuous_convergence(X, Y);
            if (!fs.functions.empty()) {
                expect(axiom_report(fs.space).is_limit(),
                       "a continuous convergence failed the limit axioms");
                expect(is_continuous(eval_map(fs)).continuous, "evaluation is not continuous");
                for (std::uint32_t g = 1; g <= fs.space.full_mask(); ++g) {
                    std::uint32_t lim = fs.space.limits_bits(g);
                    for (int f = 0; f < static_cast<int>(fs.functions.size()); ++f) {
                        if ((lim >> f) & 1u) continue;
                        FunctionSpace enlarged = fs;
                        enlarged.space = fs.space.with_limits(g, lim | (1u << f));
                        expect(!is_continuous(eval_map(enlarged)).continuous,
                               "the continuous convergence is not the coarsest structure "
                               "keeping evaluation continuous");
                    }
                }
            }
            for (const auto& Z : spaces) {
                Preconvergence zx = product({Z, X});
                long long round_trips = 0;
                for (const auto& graph : continuous_maps(zx, Y)) {
                    CurryResult cr = curry(SpaceMap(zx, Y, graph), Z, X);
                    expect(is_continuous(cr.tilde).continuous, "a transpose is not continuous");
                    expect(uncurry(cr.tilde, cr.space).graph() == graph,
                           "uncurry(curry(h)) is not h");
                    ++round_trips;
                }
                FunctionSpace fs2 = continuous_convergence(X, Y);
                long long other_side = 0;
                for (const auto& graph : continuous_maps(Z, fs2.space)) {
                    SpaceMap k(Z, fs2.space, graph);
                    expect(curry(uncurry(k, fs2), Z, X).tilde.graph() == graph,
                           "curry(uncurry(k)) is not k");
                    ++other_side;
                }
                expect(round_trips == other_side, "hom-set cardinalities differ");
            }
        }

    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Rng rng = Rng::stream(7070, seed);
        const Preconvergence& X = spaces[rng.below(spaces.size())];
        const Preconvergence& Y = spaces[rng.below(spaces.size())];
        const Preconvergence& Z = spaces[rng.below(spaces.size())];
        expect(verify_composition_continuity(X, Y, Z), "composition failed to be continuous");
    }
}

// ---------------------------------------------------------------- criterion 8
void criterion_pasting() {
    long long glue_calls = 0;
    for (std::uint64_t instance = 0; instance < 200; ++instance) {
        Rng rng = Rng::stream(808, instance);
        int n = 1 + static_cast<int>(rng.below(4));
        int m = 1 + static_cast<int>(rng.below(3));
        Preconvergence X =
            random_space_stream(n, rng, {Axiom::Centered, Axiom::Isotone, Axiom::Stable});
        Preconvergence Y =
            random_space_stream(m, rng, {Axiom::Centered, Axiom::Isotone, Axiom::Stable});
        std::uint32_t full = X.full_mask();

        std::vector<bool> closed(static_cast<size_t>(full) + 1, false);
        for (std::uint32_t s = 1; s <= full; ++s)
            closed[s] = classify_set(X, PointSet(X.carrier(), s)).closed;

        // Pairs (fA, fB) that agree on the overlap are exactly the total maps.
        long long map_count = 1;
        for (int i = 0; i < n; ++i) map_count *= m;
        for (long long code = 0; code < map_count; ++code) {
            std::vector<int> graph(static_cast<size_t>(n));
            long long rem = code;
            for (int i = 0; i < n; ++i) {
                graph[static_cast<size_t>(i)] = static_cast<int>(rem % m);
                rem /= m;
            }
            SpaceMap f(X, Y, graph);
            for (std::uint32_t a = 1; a <= full; ++a) {
                if (!closed[a]) continue;
                for (std::uint32_t b = 1; b <= full; ++b) {
                    if (!closed[b] || (a | b) != full) continue;
                    SpaceMap fa = restrict_domain(f, PointSet(X.carrier(), a));
                    SpaceMap fb = restrict_domain(f, PointSet(X.carrier(), b));
                    if (!is_continuous(fa).continuous || !is_continuous(fb).continuous) continue;
                    // glue() raises a Falsification (exit 3) on any violation.
                    GlueResult r = glue(fa, fb, X, Y);
                    expect(r.hypotheses_hold && r.continuous, "pasting verdict inconsistent");
                    ++glue_calls;
                }
            }
        }
    }
    expect(glue_calls > 0, "no pasting instances were exercised");
}

// ---------------------------------------------------------------- criterion 9
void criterion_compactness_theorem() {
    for (int n = 0; n <= 3; ++n) {
        SpaceEnumerator en(n, {Axiom::Isotone});
        long long checked = 0;
        while (auto L = en.next()) {
            CompactnessTheoremReport r = verify_compactness_theorem(*L);
            expect(r.agreement, "compactness disagreed with the finite-subcover condition");
            expect(r.families_checked == (1ll << (1 << n)), "family enumeration incomplete");
            if (!r.compact) {
                expect(r.hat_system.has_value() && r.hat_point.has_value(),
                       "missing complement-family witness on a non-compact space");
                ConvergenceSystem sys = make_system(*L, *r.hat_system);
                expect(validate_system(sys), "the complement-family witness failed validation");
                expect(!finite_subcover(*L, sys).has_value(),
                       "the complement-family witness has a finite subcover");
            }
            ++checked;
        }
        expect(checked > 0, "no isotone spaces enumerated");
    }
}

// --------------------------------------------------------------- criterion 10
void criterion_searches() {
    SearchSpec stability;
    stability.property = "stability";
    stability.max_points = 3;
    stability.seed = 2026;
    stability.budget = 10'000'000;
    auto w1 = search_counterexample(stability);
    expect(w1.has_value(), "no centered+isotone non-stable table found at n=3");
    const Preconvergence& L = w1->spaces[0].second;
    expect(check_axiom(L, Axiom::Centered).holds && check_axiom(L, Axiom::Isotone).holds &&
               !check_axiom(L, Axiom::Stable).holds,
           "the stability witness is not a centered+isotone non-stable table");
    expect(replay_witness(*w1), "the stability witness failed to replay");
    auto w1_again = search_counterexample(stability);
    expect(w1_again.has_value() && witness_to_json(*w1) == witness_to_json(*w1_again),
           "the stability search is not bit-stable");

    auto run_twice = [](const std::string& property, std::uint64_t budget) {
        SearchSpec spec;
        spec.property = property;
        spec.max_points = 3;
        spec.seed = 5;
        spec.budget = budget;
        auto a = search_counterexample(spec);
        auto b = search_counterexample(spec);
        expect(a.has_value() == b.has_value(), property + " outcome is not deterministic");
        if (a) {
            expect(replay_witness(*a), property + " witness failed to replay");
            expect(witness_to_json(*a) == witness_to_json(*b), property + " is not bit-stable");
        }
        return a;
    };
    auto pc = run_twice("pasting-closed", 2000);
    expect(pc.has_value(), "pasting-closed found no witness with the fixed seed");
    auto ps = run_twice("pasting-stability", 200000);
    expect(ps.has_value(), "pasting-stability found no witness with the fixed seed");
    run_twice("quotient-limit", 2000);  // outcome recorded either way, never asserted
}

// --------------------------------------------------------------- criterion 11
int run_cli(const std::string& args) {
    std::string cmd = "'" + g_cli_path + "' " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_cli_and_format() {
    for (const char* name : {"S2", "D2", "C2", "P3", "W3"}) {
        std::string path = g_fixtures_dir + "/" + std::string(name) + ".json";
        std::string text = convg::testing::read_file(path);
        ParsedSpace parsed = parse_space(text);
        expect(serialize_space(parsed.space, parsed.name) == text,
               std::string(name) + " does not round-trip byte-identically");
    }
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        int n = static_cast<int>(seed % 5) + 1;
        Preconvergence L = random_space(n, seed, {});
        std::string text = serialize_space(L, "r" + std::to_string(seed));
        ParsedSpace back = parse_space(text);
        expect(back.space == L && serialize_space(back.space, back.name) == text,
               "random space round trip broke");
    }

    std::string fx = "'" + g_fixtures_dir + "/";
    expect(run_cli("check " + fx + "S2.json' --quiet") == 0, "check S2 should exit 0");
    expect(run_cli("check " + fx + "P3.json' --axiom topological --quiet") == 1,
           "check P3 --axiom topological should exit 1");
    expect(run_cli("continuity " + fx + "D2.json' " + fx + "D2.json' --map a:a,b:b --quiet") == 0,
           "identity on D2 should exit 0");
    expect(run_cli("continuity " + fx + "C2.json' " + fx + "D2.json' --map a:a,b:b --quiet") == 1,
           "identity from C2 to D2 should exit 1");
    expect(run_cli("compact " + fx + "S2.json' --quiet") == 0, "compact S2 should exit 0");
    expect(run_cli("adh " + fx + "S2.json' --set a --quiet") == 0, "adh should exit 0");
    expect(run_cli("search --property stability --max-points 2 --seed 1 --budget 100000 --quiet") ==
               1,
           "search with a witness should exit 1");
    expect(run_cli("search --property quotient-limit --max-points 2 --seed 1 --budget 20 --quiet") ==
               0,
           "search without a witness should exit 0");
    expect(run_cli("check /nonexistent.json --quiet") == 2, "missing input should exit 2");
    expect(run_cli("check " + fx + "S2.json' --axiom bogus --quiet") == 2,
           "unknown axiom should exit 2");

    char tmpl[] = "/tmp/convg-accept-XXXXXX";
    char* dir = mkdtemp(tmpl);
    expect(dir != nullptr, "mkdtemp failed");
    std::string tmp(dir);

    expect(run_cli("op product " + fx + "D2.json' " + fx + "D2.json' -o '" + tmp + "/prod.json'") == 0,
           "op product should exit 0");
    Preconvergence prod = parse_space(convg::testing::read_file(tmp + "/prod.json")).space;
    expect(prod == product({fixture("D2"), fixture("D2")}), "product output mismatch");

    expect(run_cli("op coproduct " + fx + "S2.json' " + fx + "S2.json' -o '" + tmp + "/cop.json'") ==
               0,
           "op coproduct should exit 0");
    expect(parse_space(convg::testing::read_file(tmp + "/cop.json")).space ==
               coproduct({fixture("S2"), fixture("S2")}),
           "coproduct output mismatch");

    expect(run_cli("op subspace " + fx + "P3.json' --set 'a b' -o '" + tmp + "/sub.json'") == 0,
           "op subspace should exit 0");
    Preconvergence p3 = fixture("P3");
    expect(parse_space(convg::testing::read_file(tmp + "/sub.json")).space ==
               subspace(p3, PointSet::of(p3.carrier(), {"a", "b"})),
           "subspace output mismatch");

    expect(run_cli("op quotient " + fx + "P3.json' --classes 'a b|c' -o '" + tmp + "/quo.json'") == 0,
           "op quotient should exit 0");
    expect(parse_space(convg::testing::read_file(tmp + "/quo.json")).space ==
               quotient(p3, {PointSet::of(p3.carrier(), {"a", "b"}),
                             PointSet::of(p3.carrier(), {"c"})}),
           "quotient output mismatch");

    expect(run_cli("inh " + fx + "S2.json' --set a --quiet") == 0, "inh should exit 0");

    expect(run_cli("modify " + fx + "P3.json' --kind topological -o '" + tmp + "/p3top.json'") == 0,
           "modify should exit 0");
    Preconvergence p3top = parse_space(convg::testing::read_file(tmp + "/p3top.json")).space;
    expect(p3top == topological_modification(fixture("P3")), "modification output mismatch");

    // The limit modification needs a convergence: feeding it a non-centered
    // table is an input error.
    std::ofstream bad(tmp + "/bad.json");
    bad << serialize_space(Preconvergence::empty_space(generated_carrier(2)), "bad");
    bad.close();
    expect(run_cli("modify '" + tmp + "/bad.json' --kind limit -o '" + tmp + "/x.json'") == 2,
           "limit modification of a non-convergence should exit 2");

    expect(run_cli("export " + fx + "S2.json' --dot -o '" + tmp + "/s2.dot'") == 0,
           "export should exit 0");
    std::string dot = convg::testing::read_file(tmp + "/s2.dot");
    expect(dot.rfind("digraph", 0) == 0 && dot.find("\"b\" -> \"a\"") != std::string::npos,
           "dot export missing the specialization edge");

    expect(run_cli("funcspace " + fx + "D2.json' " + fx + "D2.json' -o '" + tmp + "/fs.json'") == 0,
           "funcspace should exit 0");
    ParsedSpace fs = parse_space(convg::testing::read_file(tmp + "/fs.json"));
    expect(fs.space.n() == 4, "funcspace document should carry four maps");
}

struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<void()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) g_cli_path = argv[++i];
        else if (arg == "--fixtures" && i + 1 < argc) g_fixtures_dir = argv[++i];
        else selected.push_back(std::atoi(arg.c_str()));
    }
    if (g_fixtures_dir.empty()) g_fixtures_dir = convg::testing::fixtures_dir();

    std::vector<Criterion> criteria{
        {1, "filter principality oracle", 5, criterion_filter_principality},
        {2, "net-filter bridge and axiom oracle agreement", 60, criterion_net_filter_bridge},
        {3, "topology round trip (29 topologies on 3 points)", 10, criterion_topology_round_trip},
        {4, "induced topology and adherence algebra on random tables", 30,
         criterion_induced_topology_and_adherence_algebra},
        {5, "P3 is a non-topological limit convergence with the recorded witness", 1,
         criterion_p3_witness},
        {6, "limit modification laws", 60, criterion_limit_modification},
        {7, "exponential law for continuous convergence", 120, criterion_exponential_law},
        {8, "pasting over closed covers of limit spaces", 120, criterion_pasting},
        {9, "compactness theorem on all isotone spaces up to 3 points", 60,
         criterion_compactness_theorem},
        {10, "hypothesis-necessity searches", 120, criterion_searches},
        {11, "CLI exit codes and canonical format", 10, criterion_cli_and_format},
    };

    bool all_pass = true;
    for (const auto& c : criteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), c.id) == selected.end())
            continue;
        if (c.id == 11 && g_cli_path.empty()) {
            std::cout << "[SKIP] criterion 11: pass --cli <path> to exercise the binary\n";
            all_pass = false;
            continue;
        }
        auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            c.run();
        } catch (const Failure& f) {
            failure = f.what();
        } catch (const Falsification& f) {
            std::cout << "[FAIL] criterion " << c.id << ": " << c.title << " — " << f.what()
                      << "\n";
            return 3;
        } catch (const std::exception& e) {
            failure = e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_budget = elapsed < c.budget_seconds;
        bool pass = failure.empty() && in_budget;
        all_pass = all_pass && pass;
        std::printf("[%s] criterion %d: %s (%.2fs of %.0fs)", pass ? "PASS" : "FAIL", c.id,
                    c.title, elapsed, c.budget_seconds);
        if (!failure.empty()) std::printf(" — %s", failure.c_str());
        if (!in_budget && failure.empty()) std::printf(" — exceeded the time budget");
        std::printf("\n");
    }
    return all_pass ? 0 : 1;
}
