#include "sage/log.hpp"

#include <cstdlib>
#include <iostream>

namespace sage {

void log_warn(const std::string& message) {
    static const bool quiet = [] {
        const char* v = std::getenv("SAGE_NDVI_LOG");
        return v != nullptr && std::string(v) == "quiet";
    }();
    if (!quiet) std::cerr << "warning: " << message << "\n";
}

}  // namespace sage
