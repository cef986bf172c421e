// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "qk/process_set.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace qk
{

bool
ProcessId::validToken(std::string_view s)
{
    if (s.empty())
    {
        return false;
    }
    for (char c : s)
    {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',' ||
            c == '{' || c == '}')
        {
            return false;
        }
    }
    return true;
}

ProcessId
ProcessId::parse(std::string_view s)
{
    if (!validToken(s))
    {
        throw InputError("bad-token",
                         "invalid process name '" + std::string(s) +
                             "': names are nonempty and contain no "
                             "whitespace, commas, or braces");
    }
    return ProcessId{std::string(s)};
}

std::shared_ptr<std::vector<std::string> const>
Ground::emptyNames()
{
    static auto const empty =
        std::make_shared<std::vector<std::string> const>();
    return empty;
}

Ground
Ground::of(std::vector<std::string> names)
{
    for (auto const& n : names)
    {
        ProcessId::parse(n);
    }
    std::sort(names.begin(), names.end());
    auto dup = std::adjacent_find(names.begin(), names.end());
    if (dup != names.end())
    {
        throw InputError("duplicate-process",
                         "duplicate process name '" + *dup + "'");
    }
    if (names.size() > 64)
    {
        throw InputError("ground-too-large",
                         "ground has " + std::to_string(names.size()) +
                             " processes; at most 64 are supported");
    }
    return Ground(
        std::make_shared<std::vector<std::string> const>(std::move(names)));
}

std::optional<size_t>
Ground::indexOf(std::string_view name) const
{
    auto const& ns = *mNames;
    auto it = std::lower_bound(ns.begin(), ns.end(), name);
    if (it == ns.end() || *it != name)
    {
        return std::nullopt;
    }
    return static_cast<size_t>(it - ns.begin());
}

bool
Ground::operator==(Ground const& other) const
{
    return mNames == other.mNames || *mNames == *other.mNames;
}

Ground
Ground::merged(Ground const& a, Ground const& b)
{
    std::vector<std::string> names;
    names.reserve(a.size() + b.size());
    std::set_union(a.names().begin(), a.names().end(), b.names().begin(),
                   b.names().end(), std::back_inserter(names));
    return Ground::of(std::move(names));
}

bool
Ground::disjoint(Ground const& a, Ground const& b)
{
    for (auto const& n : a.names())
    {
        if (b.contains(n))
        {
            return false;
        }
    }
    return true;
}

ProcessSet
ProcessSet::emptySet(Ground const& g)
{
    return ProcessSet(g, 0);
}

ProcessSet
ProcessSet::all(Ground const& g)
{
    return ProcessSet(g, g.fullMask());
}

ProcessSet
ProcessSet::of(Ground const& g, std::span<std::string const> names)
{
    uint64_t mask = 0;
    for (auto const& n : names)
    {
        auto idx = g.indexOf(n);
        if (!idx)
        {
            throw InputError("unknown-process",
                             "process '" + n + "' is not in the ground set");
        }
        mask |= uint64_t{1} << *idx;
    }
    return ProcessSet(g, mask);
}

ProcessSet
ProcessSet::of(Ground const& g, std::initializer_list<std::string_view> names)
{
    std::vector<std::string> v(names.begin(), names.end());
    return of(g, v);
}

ProcessSet
ProcessSet::fromMask(Ground const& g, uint64_t mask)
{
    if ((mask & ~g.fullMask()) != 0)
    {
        throw InputError("mask-out-of-range",
                         "set mask uses bits beyond the ground size");
    }
    return ProcessSet(g, mask);
}

size_t
ProcessSet::size() const
{
    return static_cast<size_t>(std::popcount(mMask));
}

bool
ProcessSet::contains(std::string_view name) const
{
    auto idx = mGround.indexOf(name);
    return idx && (mMask >> *idx) & 1;
}

void
ProcessSet::requireSameGround(ProcessSet const& other) const
{
    if (!(mGround == other.mGround))
    {
        throw InputError("ground-mismatch",
                         "operation requires sets over the same ground");
    }
}

bool
ProcessSet::isSubsetOf(ProcessSet const& other) const
{
    requireSameGround(other);
    return (mMask & ~other.mMask) == 0;
}

bool
ProcessSet::intersects(ProcessSet const& other) const
{
    requireSameGround(other);
    return (mMask & other.mMask) != 0;
}

ProcessSet
ProcessSet::unionWith(ProcessSet const& other) const
{
    requireSameGround(other);
    return ProcessSet(mGround, mMask | other.mMask);
}

ProcessSet
ProcessSet::intersectionWith(ProcessSet const& other) const
{
    requireSameGround(other);
    return ProcessSet(mGround, mMask & other.mMask);
}

ProcessSet
ProcessSet::difference(ProcessSet const& other) const
{
    requireSameGround(other);
    return ProcessSet(mGround, mMask & ~other.mMask);
}

ProcessSet
ProcessSet::complement() const
{
    return ProcessSet(mGround, mGround.fullMask() & ~mMask);
}

std::vector<std::string>
ProcessSet::names() const
{
    std::vector<std::string> out;
    out.reserve(size());
    for (size_t i = 0; i < mGround.size(); ++i)
    {
        if ((mMask >> i) & 1)
        {
            out.push_back(mGround.name(i));
        }
    }
    return out;
}

ProcessSet
ProcessSet::restrictedTo(Ground const& g2) const
{
    uint64_t mask = 0;
    for (size_t i = 0; i < mGround.size(); ++i)
    {
        if ((mMask >> i) & 1)
        {
            if (auto idx = g2.indexOf(mGround.name(i)))
            {
                mask |= uint64_t{1} << *idx;
            }
        }
    }
    return ProcessSet(g2, mask);
}

ProcessSet
ProcessSet::regrounded(Ground const& g2) const
{
    uint64_t mask = 0;
    for (size_t i = 0; i < mGround.size(); ++i)
    {
        if ((mMask >> i) & 1)
        {
            auto idx = g2.indexOf(mGround.name(i));
            if (!idx)
            {
                throw InputError("unknown-process",
                                 "process '" + mGround.name(i) +
                                     "' is not in the target ground");
            }
            mask |= uint64_t{1} << *idx;
        }
    }
    return ProcessSet(g2, mask);
}

bool
ProcessSet::operator==(ProcessSet const& other) const
{
    return mGround == other.mGround && mMask == other.mMask;
}

bool
setOrderLess(uint64_t a, uint64_t b)
{
    int ca = std::popcount(a);
    int cb = std::popcount(b);
    if (ca != cb)
    {
        return ca < cb;
    }
    if (a == b)
    {
        return false;
    }
    // Same cardinality: the sorted index sequences first differ at the lowest
    // bit of the symmetric difference, and the set holding it is smaller.
    uint64_t diff = a ^ b;
    uint64_t low = diff & (~diff + 1);
    return (a & low) != 0;
}

} // namespace qk
