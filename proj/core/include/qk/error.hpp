// Copyright 2026 the qk developers. Licensed under the Apache License,
// Version 2.0. See the COPYING file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qk
{

// Raised on malformed or contract-violating input: bad tokens, ground
// mismatches, antichain violations, failed operation preconditions. Carries a
// stable machine-readable code next to the human message; `detail` optionally
// holds a rendered JSON object (for example a precondition witness) that the
// CLI forwards verbatim on stderr.
class InputError : public std::runtime_error
{
  public:
    InputError(std::string code, std::string const& message)
        : std::runtime_error(message), mCode(std::move(code))
    {
    }

    InputError(std::string code, std::string const& message, std::string detail)
        : std::runtime_error(message)
        , mCode(std::move(code))
        , mDetail(std::move(detail))
    {
    }

    std::string const&
    code() const
    {
        return mCode;
    }

    // Empty when no structured detail is attached.
    std::string const&
    detail() const
    {
        return mDetail;
    }

  private:
    std::string mCode;
    std::string mDetail;
};

} // namespace qk
