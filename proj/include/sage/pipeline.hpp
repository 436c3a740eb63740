#pragma once

#include "sage/config.hpp"
#include "sage/metric.hpp"

namespace sage {

/// File-based entry point: loads the manifests, masks and sidecars named in
/// the config and runs the full evaluation.
SageReport evaluate(const RunConfig& config);

}  // namespace sage
