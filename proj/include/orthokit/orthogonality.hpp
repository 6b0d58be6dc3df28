#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "orthokit/critical_pairs.hpp"
#include "orthokit/rewrite.hpp"

namespace orthokit {

bool left_linear(const Trs& trs);
bool right_linear(const Trs& trs);
bool linear_trs(const Trs& trs);
/// Some critical pair exists (trivial ones included).
bool ambiguous(const Trs& trs);
bool orthogonal(const Trs& trs);

struct NonLinearOccurrence {
    std::size_t rule = 0;
    std::string variable;
    std::size_t count = 0;

    friend bool operator==(const NonLinearOccurrence&, const NonLinearOccurrence&) = default;
};

inline constexpr std::size_t max_sample_cps = 10;

struct OrthoReport {
    bool left_linear = true;
    bool right_linear = true;
    bool linear = true;
    bool ambiguous = false;
    bool orthogonal = true;
    /// Informational only: every critical pair is trivial.
    bool all_cps_trivial = true;
    std::vector<NonLinearOccurrence> offending_rules;
    std::size_t critical_pair_count = 0;
    std::vector<CriticalPair> sample_cps;

    friend bool operator==(const OrthoReport&, const OrthoReport&) = default;
};

OrthoReport analyze(const Trs& trs);

}  // namespace orthokit
