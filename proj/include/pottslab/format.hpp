#ifndef POTTSLAB_FORMAT_HPP
#define POTTSLAB_FORMAT_HPP

#include <cstdio>
#include <string>

namespace pottslab {

/// All numeric CLI output uses 12 significant digits.
inline std::string format_g12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace pottslab

#endif
