#include "frugal/caps.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace frugal {

ScaleCaps ScaleCaps::from_env()
{
    ScaleCaps caps;
    const char* raw = std::getenv("FRUGAL_SCALE_CAP");
    if (raw == nullptr)
        return caps;

    std::size_t value = 0;
    const char* end = raw + std::strlen(raw);
    auto [ptr, ec] = std::from_chars(raw, end, value);
    if (ec != std::errc() || ptr != end || value == 0)
        return caps;

    caps.max_paths = value;
    caps.max_independent_sets = value;
    caps.max_cover_candidates = value;
    return caps;
}

const ScaleCaps& default_caps()
{
    static const ScaleCaps caps = ScaleCaps::from_env();
    return caps;
}

} // namespace frugal
