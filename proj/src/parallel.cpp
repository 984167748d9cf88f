#include "simscore/parallel.hpp"

#include <cstdlib>
#include <string>

namespace simscore {

int default_jobs() {
    const char* env = std::getenv("SIMSCORE_JOBS");
    if (env == nullptr || *env == '\0') {
        return 1;
    }
    try {
        return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
        return 1;
    }
}

}  // namespace simscore
