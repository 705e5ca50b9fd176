#ifndef INSTAB_SRC_FORMAT_HPP
#define INSTAB_SRC_FORMAT_HPP

#include <cstdio>
#include <string>

namespace instab {

// Shortest-round-trip decimal form used for CSV cells and CLI verdict lines.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace instab

#endif
