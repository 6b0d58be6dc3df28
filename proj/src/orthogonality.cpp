#include "orthokit/orthogonality.hpp"

#include <algorithm>

namespace orthokit {

bool left_linear(const Trs& trs) {
    return std::all_of(trs.rules().begin(), trs.rules().end(), [](const Rule& r) { return linear(r.lhs); });
}

bool right_linear(const Trs& trs) {
    return std::all_of(trs.rules().begin(), trs.rules().end(), [](const Rule& r) { return linear(r.rhs); });
}

bool linear_trs(const Trs& trs) { return left_linear(trs) && right_linear(trs); }

bool ambiguous(const Trs& trs) {
    for (const Rule& outer : trs.rules()) {
        for (const Rule& inner : trs.rules()) {
            if (!critical_pairs_between(outer, inner).empty()) {
                return true;
            }
        }
    }
    return false;
}

bool orthogonal(const Trs& trs) { return left_linear(trs) && !ambiguous(trs); }

OrthoReport analyze(const Trs& trs) {
    OrthoReport report;
    report.left_linear = left_linear(trs);
    report.right_linear = right_linear(trs);
    report.linear = report.left_linear && report.right_linear;
    for (const Rule& r : trs.rules()) {
        for (const std::string& x : vars_in_order(r.lhs)) {
            std::size_t count = pos_var(r.lhs, x).size();
            if (count > 1) {
                report.offending_rules.push_back({r.id, x, count});
            }
        }
    }
    auto cps = critical_pairs(trs);
    report.critical_pair_count = cps.size();
    report.ambiguous = !cps.empty();
    report.orthogonal = report.left_linear && !report.ambiguous;
    report.all_cps_trivial = std::all_of(cps.begin(), cps.end(), [](const CriticalPair& cp) { return cp.trivial; });
    if (cps.size() > max_sample_cps) {
        cps.erase(cps.begin() + static_cast<std::ptrdiff_t>(max_sample_cps), cps.end());
    }
    report.sample_cps = std::move(cps);
    return report;
}

}  // namespace orthokit
