#pragma once

#include "sac/model.hpp"

#include <string>
#include <vector>

namespace sac {

inline constexpr const char* kDefaultTopClaim =
    "The system exhibits absence of unreasonable risk when operating in its ODD";

struct ScaffoldOptions
{
    std::string top_claim_text = kDefaultTopClaim;
    /// Sample registry items and the goals tracing them.
    bool include_samples = true;
    std::vector<std::string> context_dimensions = default_context_dimensions();
};

/// Reference argumentation skeleton with placeholder claims. Deterministic in
/// its options; every leaf is a solution with its own evidence artifact.
[[nodiscard]] GsnModel scaffold_reference_model(const ScaffoldOptions& options = {});

}  // namespace sac
