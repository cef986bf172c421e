// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "qk/error.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qk
{

// A process identifier. Names are plain tokens (nonempty, no whitespace,
// commas, or braces) so they can appear verbatim inside rendered sets and
// witness output. Equality is exact token equality.
struct ProcessId
{
    std::string name;

    static bool validToken(std::string_view s);

    // Throws InputError when `s` is not a valid token.
    static ProcessId parse(std::string_view s);

    auto operator<=>(ProcessId const&) const = default;
};

// The universe a system ranges over: an immutable, lexicographically sorted
// list of unique process names. Bit i of every set over this ground refers to
// name(i); since names are sorted, index order is lexicographic order, which
// is what makes bitmask iteration deterministic. Grounds are cheap to copy
// (shared storage) and compare by value.
class Ground
{
  public:
    Ground() : mNames(emptyNames()) {}

    // Validates tokens, sorts, and rejects duplicates and universes larger
    // than 64 processes (all checks are exhaustive bit scans; see the word
    // cap in ProcessSet).
    static Ground of(std::vector<std::string> names);

    size_t
    size() const
    {
        return mNames->size();
    }

    std::string const&
    name(size_t i) const
    {
        return (*mNames)[i];
    }

    std::vector<std::string> const&
    names() const
    {
        return *mNames;
    }

    std::optional<size_t> indexOf(std::string_view name) const;

    bool
    contains(std::string_view name) const
    {
        return indexOf(name).has_value();
    }

    // Mask with one bit per member.
    uint64_t
    fullMask() const
    {
        size_t n = mNames->size();
        return n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
    }

    bool operator==(Ground const& other) const;

    // Union of the two universes.
    static Ground merged(Ground const& a, Ground const& b);

    // True when no name appears in both.
    static bool disjoint(Ground const& a, Ground const& b);

  private:
    explicit Ground(std::shared_ptr<std::vector<std::string> const> names)
        : mNames(std::move(names))
    {
    }

    static std::shared_ptr<std::vector<std::string> const> emptyNames();

    std::shared_ptr<std::vector<std::string> const> mNames;
};

// A finite set of processes over a fixed ground, stored as one 64-bit mask.
// All algebra (union, intersection, subset tests) is word-level; the ground
// caps out at 64 members, far above the exhaustive-search scale this toolkit
// targets. Values are immutable and safe to share across threads.
class ProcessSet
{
  public:
    ProcessSet() = default;

    static ProcessSet emptySet(Ground const& g);
    static ProcessSet all(Ground const& g);

    // Throws InputError when a name is not a member of `g`. Duplicate names
    // collapse (set semantics).
    static ProcessSet of(Ground const& g, std::span<std::string const> names);
    static ProcessSet of(Ground const& g,
                         std::initializer_list<std::string_view> names);

    // `mask` must only use bits below g.size().
    static ProcessSet fromMask(Ground const& g, uint64_t mask);

    Ground const&
    ground() const
    {
        return mGround;
    }

    uint64_t
    mask() const
    {
        return mMask;
    }

    size_t size() const;

    bool
    empty() const
    {
        return mMask == 0;
    }

    bool contains(std::string_view name) const;

    bool isSubsetOf(ProcessSet const& other) const;
    bool intersects(ProcessSet const& other) const;

    ProcessSet unionWith(ProcessSet const& other) const;
    ProcessSet intersectionWith(ProcessSet const& other) const;
    ProcessSet difference(ProcessSet const& other) const;
    ProcessSet complement() const;

    // Members in lexicographic order (the iteration-order contract).
    std::vector<std::string> names() const;

    // Membership mapped onto a different universe. `restrictedTo` drops
    // members absent from `g2`; `regrounded` requires every member to exist
    // in `g2` and throws InputError otherwise.
    ProcessSet restrictedTo(Ground const& g2) const;
    ProcessSet regrounded(Ground const& g2) const;

    bool operator==(ProcessSet const& other) const;

  private:
    ProcessSet(Ground g, uint64_t mask) : mGround(std::move(g)), mMask(mask) {}

    void requireSameGround(ProcessSet const& other) const;

    Ground mGround;
    uint64_t mMask = 0;
};

// Total order used for every family and output listing: cardinality first,
// then lexicographic comparison of the sorted member lists. For masks over
// one ground the lexicographic leg reduces to a lowest-differing-bit test.
bool setOrderLess(uint64_t a, uint64_t b);

} // namespace qk
