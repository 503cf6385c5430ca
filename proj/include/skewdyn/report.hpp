#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewdyn/algebra.hpp"
#include "skewdyn/rational.hpp"

namespace skewdyn {

// Stable key: value classification report.  `weights` adds one D_l line per
// entry; `blowup` adds the blow-up section for that weight.
std::string analyze_report(const SkewProduct& f, const std::vector<Rational>& weights = {},
                           const std::optional<Rational>& blowup = std::nullopt);

}  // namespace skewdyn
