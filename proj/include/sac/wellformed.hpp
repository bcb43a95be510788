#pragma once

#include "sac/finding.hpp"
#include "sac/model.hpp"

#include <vector>

namespace sac {

/// Whether a supported_by edge from `from` to `to` is legal GSN.
[[nodiscard]] bool is_legal_support(ElementKind from, ElementKind to);

/// GSN legality checks WF1..WF8. Works on unlinked models as well, so the
/// WF1..WF3 guards can observe what link() would have rejected. Findings are
/// sorted deterministically.
[[nodiscard]] std::vector<Finding> check_wellformed(const GsnModel& model);
[[nodiscard]] std::vector<Finding> check_wellformed(const LinkedModel& model);

}  // namespace sac
