#include "qmask/util.hpp"

#include <cmath>

#include "qmask/errors.hpp"

namespace qmask {

std::vector<Complex> unit_roots(int d) {
    if (d < 1) throw ArgumentError("unit_roots: d must be >= 1");
    std::vector<Complex> roots(static_cast<std::size_t>(d));
    for (int e = 0; e < d; ++e) {
        const long long t = 4LL * e;
        if (t % d == 0) {
            switch ((t / d) % 4) {
                case 0: roots[e] = {1.0, 0.0}; break;
                case 1: roots[e] = {0.0, 1.0}; break;
                case 2: roots[e] = {-1.0, 0.0}; break;
                default: roots[e] = {0.0, -1.0}; break;
            }
        } else {
            const double ang = 2.0 * M_PI * e / d;
            roots[e] = {std::cos(ang), std::sin(ang)};
        }
    }
    return roots;
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

} // namespace qmask
