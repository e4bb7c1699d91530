#pragma once

#include "bohr/series.hpp"

#include <cstdint>
#include <vector>

namespace testing_support {

// Small seeded generator for property tests (xorshift64*), independent of
// the library's sampling stream.
class Gen {
  public:
    explicit Gen(std::uint64_t seed) : s_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

    std::uint64_t next() {
        s_ ^= s_ >> 12;
        s_ ^= s_ << 25;
        s_ ^= s_ >> 27;
        return s_ * 0x2545F4914F6CDD1DULL;
    }
    double uniform(double lo = 0.0, double hi = 1.0) {
        return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    }
    int integer(int lo, int hi) { return lo + static_cast<int>(next() % (hi - lo + 1)); }

    // Coefficients uniform in [lo, hi] with the constant term fixed.
    bohr::TruncatedSeries series(int order, double c0, double lo = -1.0, double hi = 1.0) {
        std::vector<double> c(static_cast<std::size_t>(order) + 1);
        c[0] = c0;
        for (int n = 1; n <= order; ++n)
            c[static_cast<std::size_t>(n)] = uniform(lo, hi);
        return bohr::TruncatedSeries(std::move(c));
    }

  private:
    std::uint64_t s_;
};

inline double max_abs_diff(const bohr::TruncatedSeries& a, const bohr::TruncatedSeries& b) {
    const int n = a.order() < b.order() ? a.order() : b.order();
    double m = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double d = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
        m = d > m ? d : m;
    }
    return m;
}

} // namespace testing_support
