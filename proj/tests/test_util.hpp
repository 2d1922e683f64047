#pragma once

// Shared measurement helpers for the test suites: deliberately simple,
// independent implementations used as oracles against library output.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace testutil {

// FWHM of a sampled positive pulse via peak pick + linear interpolation
// of the half-maximum crossings.
inline double measure_fwhm(const std::vector<double>& t, const std::vector<double>& y) {
    size_t ipk = 0;
    for (size_t i = 0; i < y.size(); ++i)
        if (y[i] > y[ipk]) ipk = i;
    const double half = 0.5 * y[ipk];
    double left = t.front(), right = t.back();
    for (size_t i = ipk; i > 0; --i) {
        if (y[i - 1] < half) {
            const double f = (half - y[i - 1]) / (y[i] - y[i - 1]);
            left = t[i - 1] + f * (t[i] - t[i - 1]);
            break;
        }
    }
    for (size_t i = ipk; i + 1 < y.size(); ++i) {
        if (y[i + 1] < half) {
            const double f = (y[i] - half) / (y[i] - y[i + 1]);
            right = t[i] + f * (t[i + 1] - t[i]);
            break;
        }
    }
    return right - left;
}

// 1/e decay time of (y - y_inf) between two sample times; assumes a
// clean exponential between them.
inline double two_point_decay_time(const std::vector<double>& t, const std::vector<double>& y,
                                   double t1, double t2, double y_inf = 0.0) {
    auto at = [&](double tq) {
        for (size_t i = 1; i < t.size(); ++i)
            if (t[i] >= tq) {
                const double f = (tq - t[i - 1]) / (t[i] - t[i - 1]);
                return y[i - 1] + f * (y[i] - y[i - 1]);
            }
        return y.back();
    };
    const double a = at(t1) - y_inf;
    const double b = at(t2) - y_inf;
    if (a <= 0.0 || b <= 0.0 || a <= b) throw std::runtime_error("two_point_decay_time: not decaying");
    return (t2 - t1) / std::log(a / b);
}

// Trapezoid integral of samples y(t) over [a, b].
inline double integrate(const std::vector<double>& t, const std::vector<double>& y, double a,
                        double b) {
    double s = 0.0;
    for (size_t i = 1; i < t.size(); ++i) {
        if (t[i] <= a || t[i - 1] >= b) continue;
        s += 0.5 * (y[i] + y[i - 1]) * (t[i] - t[i - 1]);
    }
    return s;
}

} // namespace testutil
