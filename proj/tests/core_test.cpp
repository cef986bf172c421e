// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "qk/set_family.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qk;
using namespace qk::test;

namespace
{

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

std::vector<std::vector<std::string>>
names(SetFamily const& f)
{
    std::vector<std::vector<std::string>> out;
    for (size_t i = 0; i < f.size(); ++i)
    {
        out.push_back(f.at(i).names());
    }
    return out;
}

} // namespace

TEST_CASE("process names are validated tokens")
{
    CHECK(ProcessId::validToken("a"));
    CHECK(ProcessId::validToken("node-7"));
    CHECK(!ProcessId::validToken(""));
    CHECK(!ProcessId::validToken("a b"));
    CHECK(!ProcessId::validToken("a,b"));
    CHECK(!ProcessId::validToken("{a}"));
    CHECK_THROWS_AS(ProcessId::parse("x y"), InputError);
}

TEST_CASE("grounds sort names and reject duplicates")
{
    Ground g = Ground::of({"c", "a", "b"});
    CHECK(g.name(0) == "a");
    CHECK(g.name(2) == "c");
    CHECK(g.indexOf("b") == size_t{1});
    CHECK(!g.indexOf("z"));
    CHECK_THROWS_AS(Ground::of({"a", "a"}), InputError);

    std::vector<std::string> big;
    for (int i = 0; i < 65; ++i)
    {
        big.push_back("p" + std::to_string(100 + i));
    }
    CHECK_THROWS_AS(Ground::of(big), InputError);
}

TEST_CASE("process set algebra")
{
    Ground g = letters(4);
    auto ab = ProcessSet::of(g, {"a", "b"});
    auto bc = ProcessSet::of(g, {"b", "c"});

    CHECK(ab.unionWith(bc).names() == std::vector<std::string>{"a", "b", "c"});
    CHECK(ab.intersectionWith(bc).names() == std::vector<std::string>{"b"});
    CHECK(ab.difference(bc).names() == std::vector<std::string>{"a"});
    CHECK(ab.complement().names() == std::vector<std::string>{"c", "d"});
    CHECK(ProcessSet::of(g, {"b"}).isSubsetOf(ab));
    CHECK(!ab.isSubsetOf(bc));
    CHECK(ProcessSet::emptySet(g).isSubsetOf(ab));

    Ground other = letters(3);
    CHECK_THROWS_AS(ab.unionWith(ProcessSet::of(other, {"a"})), InputError);
    CHECK_THROWS_AS(ProcessSet::of(g, {"zz"}), InputError);
}

TEST_CASE("set order is cardinality then lexicographic members")
{
    Ground g = letters(6);
    auto m = [&](std::vector<std::string> const& ns) {
        return ProcessSet::of(g, ns).mask();
    };
    CHECK(setOrderLess(m({"f"}), m({"a", "b"})));
    CHECK(setOrderLess(m({"a", "f"}), m({"b", "c"})));
    CHECK(setOrderLess(m({"a", "b"}), m({"a", "c"})));
    CHECK(!setOrderLess(m({"a", "c"}), m({"a", "b"})));
    CHECK(!setOrderLess(m({"a"}), m({"a"})));

    // Families iterate in exactly this order.
    SetFamily f = fam(g, {{"b", "c"}, {"f"}, {"a", "c"}, {"a", "b"}});
    CHECK(names(f) == std::vector<std::vector<std::string>>{
                          {"f"}, {"a", "b"}, {"a", "c"}, {"b", "c"}});
}

TEST_CASE("families deduplicate on construction")
{
    Ground g = letters(3);
    SetFamily f = fam(g, {{"a"}, {"a"}, {"b", "c"}});
    CHECK(f.size() == 2);
    CHECK(f.isAntichain());
    CHECK(fam(g, {{"a"}, {"a", "b"}}).isAntichain() == false);
}

TEST_CASE("maximalize keeps exactly the maximal sets")
{
    Ground g = letters(3);
    // {{a},{a,b},{c}} -> {{a,b},{c}}
    CHECK(maximalize(fam(g, {{"a"}, {"a", "b"}, {"c"}})) ==
          fam(g, {{"a", "b"}, {"c"}}));
    // Empty family stays empty.
    CHECK(maximalize(SetFamily::fromMasks(g, {})).empty());
}

TEST_CASE("maximalize of the raw composition candidates reproduces the "
          "composite family")
{
    // Raw pairwise candidates of the two five-process systems sharing d and
    // e, before maximalization; their maximal sets are the known composite.
    Ground g1 = letters(5);
    Ground g2 = Ground::of({"d", "e", "f", "g", "h"});
    SetFamily f1 = fam(g1, {{"a"}, {"b", "c"}, {"d"}, {"c", "e"}});
    SetFamily f2 = fam(g2, {{"d"}, {"e"}, {"f", "g"}, {"h"}});

    Ground g3 = Ground::merged(g1, g2);
    uint64_t common = ProcessSet::all(g1).regrounded(g3).mask() &
                      ProcessSet::all(g2).regrounded(g3).mask();
    SetFamily r1 = f1.regrounded(g3);
    SetFamily r2 = f2.regrounded(g3);
    std::vector<uint64_t> raw;
    for (uint64_t a : r1.masks())
    {
        for (uint64_t b : r2.masks())
        {
            raw.push_back((a & ~common) | (b & ~common) | (a & b));
        }
    }
    SetFamily expected = fam(g3, {{"a", "f", "g"},
                                  {"a", "h"},
                                  {"b", "c", "f", "g"},
                                  {"b", "c", "h"},
                                  {"d"},
                                  {"c", "e"}});
    CHECK(maximalize(SetFamily::fromMasks(g3, raw)) == expected);
}

TEST_CASE("maximalize is idempotent and order-independent")
{
    Rng rng(0xc0ffee);
    for (int trial = 0; trial < 200; ++trial)
    {
        Ground g = letters(2 + trial % 5);
        std::vector<uint64_t> masks;
        std::uniform_int_distribution<size_t> count(0, 8);
        size_t n = count(rng);
        for (size_t i = 0; i < n; ++i)
        {
            masks.push_back(randomMask(rng, g, 0.4));
        }
        SetFamily once = maximalize(SetFamily::fromMasks(g, masks));
        CHECK(maximalize(once) == once);

        std::shuffle(masks.begin(), masks.end(), rng);
        CHECK(maximalize(SetFamily::fromMasks(g, masks)) == once);
        CHECK(once.isAntichain());
    }
}

TEST_CASE("closure membership")
{
    Ground g = letters(4);
    SetFamily f = fam(g, {{"b", "c"}, {"d"}});
    CHECK(inClosure(ProcessSet::of(g, {"c"}), f));
    CHECK(inClosure(ProcessSet::emptySet(g), f));
    CHECK(!inClosure(ProcessSet::of(g, {"b", "d"}), f));
    CHECK_THROWS_AS(inClosure(ProcessSet::of(letters(2), {"a"}), f),
                    InputError);
}

TEST_CASE("closure membership agrees with maximalized family")
{
    Rng rng(42);
    for (int trial = 0; trial < 100; ++trial)
    {
        Ground g = letters(2 + trial % 5);
        std::vector<uint64_t> masks;
        for (size_t i = 0; i < 6; ++i)
        {
            masks.push_back(randomMask(rng, g, 0.4));
        }
        SetFamily f = SetFamily::fromMasks(g, masks);
        SetFamily m = maximalize(f);
        for (uint64_t s = 0; s <= g.fullMask(); ++s)
        {
            auto set = ProcessSet::fromMask(g, s);
            CHECK(inClosure(set, f) == inClosure(set, m));
        }
    }
}

TEST_CASE("closure intersection candidates")
{
    Ground g = letters(3);
    CHECK(closureIntersectionCandidates(fam(g, {{"a", "b"}}),
                                        fam(g, {{"b", "c"}})) ==
          fam(g, {{"b"}}));

    SetFamily same = fam(g, {{"a"}, {"b", "c"}});
    CHECK(closureIntersectionCandidates(same, same) == same);

    // Value derived by brute-force enumeration of all common subsets.
    SetFamily a = fam(g, {{"a", "b", "c"}});
    SetFamily b = fam(g, {{"a", "b"}, {"b", "c"}});
    SetFamily expected = fam(g, {{"a", "b"}, {"b", "c"}});
    CHECK(oracleClosureIntersection(a, b) == expected);
    CHECK(closureIntersectionCandidates(a, b) == expected);
}

TEST_CASE("closure intersection represents exactly the closure overlap")
{
    Rng rng(7);
    for (int trial = 0; trial < 60; ++trial)
    {
        Ground g = letters(2 + trial % 5); // up to six processes
        SetFamily a = randomAntichain(rng, g, 5, 0.45);
        SetFamily b = randomAntichain(rng, g, 5, 0.45);
        SetFamily cands = closureIntersectionCandidates(a, b);
        for (uint64_t s = 0; s <= g.fullMask(); ++s)
        {
            auto set = ProcessSet::fromMask(g, s);
            bool inBoth = oracleInClosure(s, a) && oracleInClosure(s, b);
            CHECK(inBoth == inClosure(set, cands));
        }
    }
}

TEST_CASE("complement family")
{
    Ground g = letters(4);
    CHECK(complementFamily(fam(g, {{"a"}, {"b", "c"}})) ==
          fam(g, {{"b", "c", "d"}, {"a", "d"}}));
    CHECK(complementFamily(SetFamily::fromMasks(g, {0})) ==
          fam(g, {{"a", "b", "c", "d"}}));

    // The five-process family {{d},{e},{f,g},{h}} over d..h.
    Ground g2 = Ground::of({"d", "e", "f", "g", "h"});
    CHECK(complementFamily(fam(g2, {{"d"}, {"e"}, {"f", "g"}, {"h"}})) ==
          fam(g2, {{"e", "f", "g", "h"},
                   {"d", "f", "g", "h"},
                   {"d", "e", "h"},
                   {"d", "e", "f", "g"}}));
}

TEST_CASE("complement is an involution")
{
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial)
    {
        Ground g = letters(1 + trial % 6);
        SetFamily f = randomAntichain(rng, g, 6, 0.5);
        CHECK(complementFamily(complementFamily(f)) == f);
    }
}
