#pragma once

#include <string>

namespace sage {

/// Warnings go to stderr unless SAGE_NDVI_LOG=quiet. This is the only
/// environment-controlled knob; all science parameters live in config.
void log_warn(const std::string& message);

}  // namespace sage
