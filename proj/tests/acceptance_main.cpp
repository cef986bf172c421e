// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Everything runs on a single core in well under a minute.

#include "qk/analysis.hpp"
#include "qk/cli.hpp"
#include "qk/compose.hpp"
#include "qk/conditions.hpp"
#include "qk/purify.hpp"
#include "qk/sim.hpp"
#include "qk/util.hpp"
#include "oracles.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace qk;
using namespace qk::test;

namespace
{

int failures = 0;

void
criterion(std::string const& name, std::function<bool(std::string&)> const& fn)
{
    std::string detail;
    bool ok = false;
    try
    {
        ok = fn(detail);
    }
    catch (std::exception const& e)
    {
        detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name
              << (detail.empty() ? "" : " -- " + detail) << "\n";
    if (!ok)
    {
        ++failures;
    }
}

SetFamily
fam(Ground const& g, std::vector<std::vector<std::string>> const& sets)
{
    std::vector<ProcessSet> ps;
    for (auto const& s : sets)
    {
        ps.push_back(ProcessSet::of(g, s));
    }
    return SetFamily::of(g, ps);
}

FailProneSystem
fixtureF1()
{
    return FailProneSystem(
        fam(letters(5), {{"a"}, {"b", "c"}, {"d"}, {"c", "e"}}));
}

FailProneSystem
fixtureF2()
{
    Ground g = Ground::of({"d", "e", "f", "g", "h"});
    return FailProneSystem(fam(g, {{"d"}, {"e"}, {"f", "g"}, {"h"}}));
}

Ground
namedGround(std::string const& prefix, int count, int width)
{
    std::vector<std::string> names;
    for (int i = 1; i <= count; ++i)
    {
        std::string n = std::to_string(i);
        while (static_cast<int>(n.size()) < width)
        {
            n = "0" + n;
        }
        names.push_back(prefix + n);
    }
    return Ground::of(std::move(names));
}

std::string
slurp(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw InputError("unreadable-file", "cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// --- criterion 1 -----------------------------------------------------------

bool
example1Counts(std::string& detail)
{
    Ground g1 = namedGround("a", 7, 1);
    Ground g2 = namedGround("b", 10, 2);
    auto f1 = thresholdFailProne(g1, 2);
    auto f2 = thresholdFailProne(g2, 3);
    auto result = cartesianCompose(f1, f2);
    size_t got = result.failProne->family().size();
    if (got != 2520)
    {
        detail = "expected 2520 maximal sets, got " + std::to_string(got);
        return false;
    }
    if (binomial(17, 5) != 6188)
    {
        detail = "binomial(17,5) != 6188";
        return false;
    }
    Ground g3 = result.failProne->ground();
    auto p1 = ProcessSet::all(g1).regrounded(g3);
    auto p2 = ProcessSet::all(g2).regrounded(g3);
    Rng rng(1);
    for (int i = 0; i < 10000; ++i)
    {
        auto f = ProcessSet::fromMask(g3, randomMask(rng, g3, 0.25));
        bool predicted = f.intersectionWith(p1).size() <= 2 &&
                         f.intersectionWith(p2).size() <= 3;
        if (inClosure(f, result.failProne->family()) != predicted)
        {
            detail = "membership predicate mismatch";
            return false;
        }
    }
    detail = "2520 maximal sets, C(17,5)=6188, 10^4 membership samples";
    return true;
}

// --- criterion 2 -----------------------------------------------------------

bool
example3Negative(std::string& detail)
{
    auto result = cartesianCompose(fixtureF1(), fixtureF2(), /*allowOverlap=*/true);
    if (result.report.holds || !result.report.witness)
    {
        detail = "overlapping cartesian unexpectedly satisfied q3";
        return false;
    }
    Ground g3 = result.failProne->ground();
    uint64_t u = 0;
    for (auto const& [role, set] : result.report.witness->sets)
    {
        u |= set.mask();
    }
    if (u != g3.fullMask())
    {
        detail = "witness does not cover the composite ground";
        return false;
    }
    uint64_t cover = 0;
    for (auto const& names : std::vector<std::vector<std::string>>{
             {"a", "f", "g"}, {"b", "c", "h"}, {"c", "d", "e"}})
    {
        auto set = ProcessSet::of(g3, names);
        if (!result.failProne->family().containsSet(set.mask()))
        {
            detail = "known covering set missing from the composite family";
            return false;
        }
        cover |= set.mask();
    }
    if (cover != g3.fullMask())
    {
        detail = "known triple fails to cover";
        return false;
    }
    detail = "q3 fails; checker witness and the known triple both cover";
    return true;
}

// --- criterion 3 -----------------------------------------------------------

bool
example4Positive(std::string& detail)
{
    auto result = composeSymmetric(fixtureF1(), fixtureF2());
    Ground g3 = letters(8);
    SetFamily expected = fam(g3, {{"a", "f", "g"},
                                  {"a", "h"},
                                  {"b", "c", "f", "g"},
                                  {"b", "c", "h"},
                                  {"d"},
                                  {"c", "e"}});
    if (!(result.failProne->family() == expected))
    {
        detail = "composite family differs from the six expected sets";
        return false;
    }
    if (!checkQ3(*result.failProne).holds || !result.report.holds)
    {
        detail = "composite fails its condition checks";
        return false;
    }
    detail = "exact six-set family, q3 holds";
    return true;
}

// --- criterion 4a ----------------------------------------------------------

bool
lemmaCompositions(std::string& detail)
{
    Rng rng(4001);
    int done = 0;
    for (int trial = 0; done < 500 && trial < 5000; ++trial)
    {
        bool overlap = trial % 2 == 1;
        size_t n1 = 2 + trial % 5; // up to 6
        size_t n2 = 2 + (trial / 2) % 5;
        std::vector<std::string> ns1, ns2;
        for (size_t i = 0; i < n1; ++i)
        {
            ns1.push_back(std::string(1, static_cast<char>('a' + i)));
        }
        size_t base = overlap ? n1 - 1 : n1;
        for (size_t i = 0; i < n2; ++i)
        {
            ns2.push_back(std::string(1, static_cast<char>('a' + base + i)));
        }
        Ground g1 = Ground::of(ns1);
        Ground g2 = Ground::of(ns2);
        auto f1 = randomQ3FailProne(rng, g1, 5, 0.35);
        auto f2 = randomQ3FailProne(rng, g2, 5, 0.35);

        std::vector<CompositionResult> results;
        results.push_back(composeSymmetric(f1, f2));
        if (!overlap)
        {
            results.push_back(unionCompose(f1, f2));
            results.push_back(cartesianCompose(f1, f2));
        }
        for (auto const& result : results)
        {
            if (!checkQ3(*result.failProne).holds)
            {
                detail = result.provenance.rule + ": composite q3 failed";
                return false;
            }
            if (!checkBqs(*result.quorums, *result.failProne).holds)
            {
                detail = result.provenance.rule + ": composite bqs failed";
                return false;
            }
        }
        ++done;
    }
    detail = std::to_string(done) + " random pairs, q3 and bqs green";
    return done == 500;
}

// --- criterion 4b ----------------------------------------------------------

bool
lemmaTolerated(std::string& detail)
{
    Rng rng(4002);
    int done = 0;
    for (int trial = 0; done < 200 && trial < 2000; ++trial)
    {
        Ground g = letters(5 + trial % 3); // five to seven processes
        auto af = randomB3Asym(rng, g, 4, 0.3);
        if (!checkB3(af).holds)
        {
            continue;
        }
        auto t = toleratedSystem(canonicalQuorums(af), af);
        if (!checkQ3(t.family()).holds)
        {
            detail = "tolerated system fails q3";
            return false;
        }
        ++done;
    }
    detail = std::to_string(done) + " canonical systems, tolerated q3 green";
    return done == 200;
}

// --- criterion 4c ----------------------------------------------------------

bool
lemmaPurification(std::string& detail)
{
    Rng rng(4003);
    int done = 0;
    for (int trial = 0; done < 100 && trial < 2000; ++trial)
    {
        Ground g = letters(4 + trial % 3); // up to six processes
        auto af = randomB3Asym(rng, g, 4, 0.35);
        auto aq = trial % 2 == 0 ? canonicalQuorums(af)
                                 : canonicalWithExtraQuorums(rng, af, 0.7);
        auto t = toleratedSystem(aq, af);
        if (t.empty() || !checkQ3(t.family()).holds)
        {
            continue;
        }
        auto purified = purify(af, t);
        if (!checkB3(purified, t.family()).holds)
        {
            detail = "purified system fails b3 with tolerated appended";
            return false;
        }
        for (uint64_t failed = 0; failed <= g.fullMask(); ++failed)
        {
            auto failedSet = ProcessSet::fromMask(g, failed);
            auto before = maxGuild(aq, af, failedSet);
            auto after = maxGuild(aq, purified, failedSet);
            if (!before.isSubsetOf(after))
            {
                detail = "guild membership lost by purification";
                return false;
            }
        }
        ++done;
    }
    detail = std::to_string(done) +
             " instances purified; guild preservation exhaustive";
    return done == 100;
}

// --- criterion 4d ----------------------------------------------------------

bool
lemmaComposite(std::string& detail)
{
    Rng rng(4004);
    int done = 0;
    for (int trial = 0; done < 100 && trial < 4000; ++trial)
    {
        bool overlap = trial % 3 == 0;
        Ground g1 = letters(3);
        Ground g2 = overlap ? Ground::of({"c", "x", "y"})
                            : Ground::of({"x", "y", "z"});
        auto af1 = randomB3Asym(rng, g1, 3, 0.3);
        auto af2 = randomB3Asym(rng, g2, 3, 0.3);
        auto s1 = AsymmetricSystem{af1, canonicalQuorums(af1)};
        auto s2 = AsymmetricSystem{af2, canonicalQuorums(af2)};
        CompositionResult result;
        try
        {
            result = composeAsymmetric(s1, s2, /*autoPurify=*/true);
        }
        catch (InputError const&)
        {
            continue; // draw without a guild or with a non-q3 tolerated side
        }
        if (!result.report.holds)
        {
            detail = "composite b3 check failed";
            return false;
        }
        if (!oracleCheckB3(*result.asymFailProne))
        {
            detail = "closure-materializing oracle rejects the composite";
            return false;
        }
        ++done;
    }
    detail = std::to_string(done) + " composites, b3 + brute-force oracle";
    return done == 100;
}

// --- criterion 5 -----------------------------------------------------------

bool
oracleEquivalence(std::string& detail)
{
    Rng rng(5001);
    int instances = 0;

    auto checkInstance = [&](AsymmetricFailProneSystem const& af,
                             AsymmetricQuorumSystem const& aq,
                             std::string& why) {
        if (!(toleratedSystem(aq, af).family() == oracleTolerated(aq, af)))
        {
            why = "tolerated mismatch";
            return false;
        }
        for (size_t i = 0; i < aq.size(); ++i)
        {
            if (!(kernels(aq.at(i)) == oracleKernels(aq.at(i))))
            {
                why = "kernels mismatch";
                return false;
            }
        }
        Ground const& g = af.ground();
        for (uint64_t failed = 0; failed <= g.fullMask(); ++failed)
        {
            if (maxGuild(aq, af, ProcessSet::fromMask(g, failed)).mask() !=
                oracleMaxGuild(aq, af, failed))
            {
                why = "max guild mismatch";
                return false;
            }
        }
        if (checkB3(af).holds != oracleCheckB3(af))
        {
            why = "b3 mismatch";
            return false;
        }
        return true;
    };

    // Paper fixtures first: the symmetric systems viewed asymmetrically.
    for (auto const& f : {fixtureF1(), fixtureF2()})
    {
        auto af = AsymmetricFailProneSystem::symmetric(f);
        std::string why;
        if (!checkInstance(af, canonicalQuorums(af), why))
        {
            detail = "bundled fixture: " + why;
            return false;
        }
        ++instances;
    }

    for (int trial = 0; instances < 52; ++trial)
    {
        Ground g = letters(3 + trial % 3); // up to five processes
        auto af = trial % 2 == 0 ? randomB3Asym(rng, g, 3, 0.35)
                                 : randomAsym(rng, g, 3, 0.4);
        auto aq = canonicalQuorums(af);
        std::string why;
        if (!checkInstance(af, aq, why))
        {
            detail = why;
            return false;
        }
        ++instances;
    }

    // otimes against its definition, random overlapping pairs.
    for (int trial = 0; trial < 50; ++trial)
    {
        size_t n1 = 1 + trial % 3;
        size_t n2 = 1 + (trial / 2) % 3;
        size_t shift = trial % 2;
        std::vector<std::string> ns1, ns2;
        for (size_t i = 0; i < n1; ++i)
        {
            ns1.push_back(std::string(1, static_cast<char>('a' + i)));
        }
        for (size_t i = 0; i < n2; ++i)
        {
            ns2.push_back(std::string(1, static_cast<char>('a' + shift + i)));
        }
        SetFamily a = randomAntichain(rng, Ground::of(ns1), 4, 0.5);
        SetFamily b = randomAntichain(rng, Ground::of(ns2), 4, 0.5);
        if (!(otimes(a, b) == oracleOtimes(a, b)))
        {
            detail = "otimes mismatch";
            return false;
        }
    }

    // The overlapping fixture pair through otimes.
    if (!(otimes(fixtureF1().family(), fixtureF2().family()) ==
          oracleOtimes(fixtureF1().family(), fixtureF2().family())))
    {
        detail = "otimes mismatch on the overlapping fixture pair";
        return false;
    }

    detail = std::to_string(instances) +
             " system instances + 51 otimes pairs, zero mismatches";
    return true;
}

// --- criterion 6 -----------------------------------------------------------

Scenario
example4Scenario()
{
    Scenario s;
    auto af1 = AsymmetricFailProneSystem::symmetric(fixtureF1());
    auto af2 = AsymmetricFailProneSystem::symmetric(fixtureF2());
    s.systemA = AsymmetricSystem{af1, canonicalQuorums(af1)};
    s.systemB = AsymmetricSystem{af2, canonicalQuorums(af2)};
    s.initiator = "a";
    s.historyA = {{"a", 1, "alpha"}, {"c", 2, "gamma"}};
    s.historyB = {{"f", 1, "zeta"}, {"f", 3, "eta"}};
    s.seed = 1;
    return s;
}

bool
simDeterminism(std::string& detail)
{
    Scenario s = example4Scenario();
    s.faulty = {"h"};
    s.behavior["h"] = FaultBehavior::Silent;
    uint64_t h0 = traceHash(run(s));
    for (int i = 0; i < 2; ++i)
    {
        if (traceHash(run(s)) != h0)
        {
            detail = "trace hash changed across identical runs";
            return false;
        }
    }
    detail = "3 runs, identical trace hash";
    return true;
}

bool
simGuildLiveness(std::string& detail)
{
    Scenario base = example4Scenario();
    Ground ga = base.systemA.failProne.ground();
    Ground gb = base.systemB.failProne.ground();
    auto ta = toleratedSystem(base.systemA.quorums, base.systemA.failProne);
    auto tb = toleratedSystem(base.systemB.quorums, base.systemB.failProne);

    int runs = 0;
    for (auto const* t : {&ta, &tb})
    {
        for (size_t k = 0; k < t->family().size(); ++k)
        {
            Scenario s = base;
            auto tolerated = t->family().at(k);
            s.faulty = tolerated.names();
            for (auto const& n : s.faulty)
            {
                s.behavior[n] = FaultBehavior::Silent;
            }
            // Any correct process of side A may initiate; liveness is a
            // quorum property, not initiator-crash tolerance.
            for (auto const& n : ga.names())
            {
                if (!tolerated.contains(n))
                {
                    s.initiator = n;
                    break;
                }
            }
            auto faultyIn = [&](Ground const& g) {
                std::vector<std::string> in;
                for (auto const& f : s.faulty)
                {
                    if (g.contains(f))
                    {
                        in.push_back(f);
                    }
                }
                return ProcessSet::of(g, in);
            };
            Trace trace = run(s);
            auto guildA = maxGuild(base.systemA.quorums,
                                   base.systemA.failProne, faultyIn(ga));
            auto guildB = maxGuild(base.systemB.quorums,
                                   base.systemB.failProne, faultyIn(gb));
            for (auto const& side : {guildA.names(), guildB.names()})
            {
                for (auto const& n : side)
                {
                    if (!trace.outcomes.at(n).composed)
                    {
                        detail = "guild member " + n +
                                 " undecided for tolerated set #" +
                                 std::to_string(runs);
                        return false;
                    }
                }
            }
            ++runs;
        }
    }
    detail = std::to_string(runs) + " tolerated-set injections, guilds live";
    return true;
}

bool
simAgreement(std::string& detail)
{
    Scenario base = example4Scenario();
    base.faulty = {"b", "c", "f", "g"};
    for (auto const& n : base.faulty)
    {
        base.behavior[n] = FaultBehavior::Equivocate;
    }
    for (uint64_t seed = 0; seed < 100; ++seed)
    {
        Scenario s = base;
        s.seed = seed;
        Trace trace = run(s);
        std::optional<History> merged;
        for (auto const& [name, outcome] : trace.outcomes)
        {
            if (!outcome.composed)
            {
                continue;
            }
            if (!merged)
            {
                merged = outcome.merged;
            }
            else if (!(outcome.merged == *merged))
            {
                detail = "seed " + std::to_string(seed) +
                         ": divergent merged histories";
                return false;
            }
        }
    }
    detail = "seeds 0-99 under equivocation, single merged history";
    return true;
}

// --- criterion 7 -----------------------------------------------------------

bool
cliByteExactness(std::string& detail)
{
    std::string dir(QK_TEST_DATA_DIR);
    struct GoldenCase
    {
        std::vector<std::string> args;
        std::string golden;
        int exitCode;
    };
    std::vector<GoldenCase> cases = {
        {{"compose", dir + "/fixtures/ex1_p1.json",
          dir + "/fixtures/ex1_p2.json", "--rule", "cartesian"},
         dir + "/golden/ex1_cartesian.golden",
         0},
        {{"compose", dir + "/fixtures/ex2_p1.json",
          dir + "/fixtures/ex2_p2.json", "--rule", "general"},
         dir + "/golden/ex2_general.golden",
         0},
        {{"compose", dir + "/fixtures/ex4_system1.json",
          dir + "/fixtures/ex4_system2.json", "--rule", "cartesian",
          "--allow-overlap"},
         dir + "/golden/ex3_cartesian_overlap.golden",
         1},
        {{"compose", dir + "/fixtures/ex4_system1.json",
          dir + "/fixtures/ex4_system2.json", "--rule", "general"},
         dir + "/golden/ex4_general.golden",
         0},
        {{"check-q3", dir + "/fixtures/ex4_system1.json"},
         dir + "/golden/ex4_checkq3.golden",
         0},
        {{"tolerated", dir + "/fixtures/ex4_system2.json"},
         dir + "/golden/ex4_tolerated.golden",
         0},
    };
    for (auto const& c : cases)
    {
        std::ostringstream out1, err1, out2, err2;
        int code1 = runCommand(c.args, out1, err1);
        int code2 = runCommand(c.args, out2, err2);
        if (code1 != c.exitCode || code2 != c.exitCode)
        {
            detail = c.golden + ": unexpected exit code";
            return false;
        }
        if (out1.str() != out2.str())
        {
            detail = c.golden + ": output differs across runs";
            return false;
        }
        if (out1.str() != slurp(c.golden))
        {
            detail = c.golden + ": output differs from the golden file";
            return false;
        }
    }
    detail = std::to_string(cases.size()) + " golden commands byte-identical";
    return true;
}

} // namespace

int
main()
{
    criterion("1. threshold cartesian counts (2520 sets, C(17,5)=6188)",
              example1Counts);
    criterion("2. overlapping cartesian fails q3 with covering witness",
              example3Negative);
    criterion("3. general composition yields the exact composite family",
              example4Positive);
    criterion("4a. union/cartesian/general composites stay q3+bqs "
              "(500 pairs)",
              lemmaCompositions);
    criterion("4b. tolerated systems of b3 canonical systems satisfy q3 "
              "(200 instances)",
              lemmaTolerated);
    criterion("4c. purification keeps b3-with-tolerated and guilds "
              "(100 instances)",
              lemmaPurification);
    criterion("4d. asymmetric composites satisfy b3, oracle-confirmed "
              "(100 pairs)",
              lemmaComposite);
    criterion("5. tolerated/kernels/max-guild/otimes/b3 match brute force",
              oracleEquivalence);
    criterion("6a. simulator determinism (3 identical trace hashes)",
              simDeterminism);
    criterion("6b. guild liveness across all tolerated-set injections",
              simGuildLiveness);
    criterion("6c. merged-history agreement under equivocation (seeds 0-99)",
              simAgreement);
    criterion("7. CLI byte-exactness on the golden commands",
              cliByteExactness);

    if (failures != 0)
    {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
