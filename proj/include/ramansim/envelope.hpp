#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ramansim/level_system.hpp"

namespace ramansim {

enum class EnvelopeShape { square, gaussian, double_gaussian, samples };

inline std::string to_string(EnvelopeShape s) {
    switch (s) {
        case EnvelopeShape::square: return "square";
        case EnvelopeShape::gaussian: return "gaussian";
        case EnvelopeShape::double_gaussian: return "double_gaussian";
        case EnvelopeShape::samples: return "samples";
    }
    return "?";
}

// Gaussians are truncated where the amplitude falls below this value so
// every envelope has finite support for scheduling.
inline constexpr double envelope_amplitude_cutoff = 1e-4;

// Normalized intensity envelope: amplitude(t) in [0,1], scaled by
// peak_intensity when driving. Immutable value object; amplitude(t) is a
// pure function.
class Envelope {
  public:
    EnvelopeShape shape = EnvelopeShape::square;
    double peak_intensity = 0.0; // nW/um^2

    // square
    double start = 0.0, duration = 0.0;
    // gaussian / double_gaussian
    double center = 0.0, fwhm = 0.0;
    double center2 = 0.0, amplitude_ratio = 1.0;
    // samples
    double sample_start = 0.0, sample_step = 0.0;
    std::vector<double> samples;

    double support_begin() const { return support_.first; }
    double support_end() const { return support_.second; }

    // Normalized amplitude in [0,1]; exactly 0 outside the support.
    double amplitude(double t) const {
        if (t < support_.first || t >= support_.second) return 0.0;
        switch (shape) {
            case EnvelopeShape::square:
                return 1.0;
            case EnvelopeShape::gaussian:
                return gauss(t, center, fwhm);
            case EnvelopeShape::double_gaussian:
                return (gauss(t, center, fwhm) + amplitude_ratio * gauss(t, center2, fwhm)) / dg_norm_;
            case EnvelopeShape::samples: {
                const double x = (t - sample_start) / sample_step;
                const auto i = static_cast<size_t>(x);
                if (i + 1 >= samples.size()) return samples.back();
                const double f = x - static_cast<double>(i);
                return samples[i] * (1.0 - f) + samples[i + 1] * f;
            }
        }
        return 0.0;
    }

    double intensity(double t) const { return peak_intensity * amplitude(t); }

    static Envelope make_square(double start, double duration, double peak_intensity) {
        if (!(duration > 0.0)) throw std::invalid_argument("envelope: field 'duration' must be > 0");
        check_intensity(peak_intensity);
        Envelope e;
        e.shape = EnvelopeShape::square;
        e.start = start;
        e.duration = duration;
        e.peak_intensity = peak_intensity;
        e.support_ = {start, start + duration};
        return e;
    }

    static Envelope make_gaussian(double center, double fwhm, double peak_intensity) {
        if (!(fwhm > 0.0)) throw std::invalid_argument("envelope: field 'fwhm' must be > 0");
        check_intensity(peak_intensity);
        Envelope e;
        e.shape = EnvelopeShape::gaussian;
        e.center = center;
        e.fwhm = fwhm;
        e.peak_intensity = peak_intensity;
        const double hw = truncation_halfwidth(fwhm);
        e.support_ = {center - hw, center + hw};
        return e;
    }

    static Envelope make_double_gaussian(double center1, double center2, double fwhm,
                                         double amplitude_ratio, double peak_intensity) {
        if (!(fwhm > 0.0)) throw std::invalid_argument("envelope: field 'fwhm' must be > 0");
        if (!(amplitude_ratio > 0.0))
            throw std::invalid_argument("envelope: field 'amplitude_ratio' must be > 0");
        check_intensity(peak_intensity);
        Envelope e;
        e.shape = EnvelopeShape::double_gaussian;
        e.center = std::min(center1, center2);
        e.center2 = std::max(center1, center2);
        e.fwhm = fwhm;
        e.amplitude_ratio = (center1 <= center2) ? amplitude_ratio : 1.0 / amplitude_ratio;
        e.peak_intensity = peak_intensity;
        const double hw = truncation_halfwidth(fwhm);
        e.support_ = {e.center - hw, e.center2 + hw};
        // Normalize the sum to peak 1 (the lobes may overlap).
        double m = 0.0;
        const int n = 2001;
        for (int i = 0; i < n; ++i) {
            const double t = e.support_.first +
                             (e.support_.second - e.support_.first) * i / (n - 1);
            m = std::max(m, gauss(t, e.center, fwhm) + e.amplitude_ratio * gauss(t, e.center2, fwhm));
        }
        e.dg_norm_ = m;
        return e;
    }

    static Envelope make_samples(double start, double step, std::vector<double> values,
                                 double peak_intensity, bool renormalize = true) {
        if (!(step > 0.0)) throw std::invalid_argument("envelope: field 'sample_step' must be > 0");
        if (values.size() < 2) throw std::invalid_argument("envelope: field 'samples' needs >= 2 points");
        check_intensity(peak_intensity);
        double m = 0.0;
        for (double v : values) {
            if (v < 0.0) throw std::invalid_argument("envelope: field 'samples' must be >= 0");
            m = std::max(m, v);
        }
        if (renormalize) {
            if (m <= 0.0) throw std::invalid_argument("envelope: field 'samples' must not be all zero");
            for (double& v : values) v /= m;
        } else if (m > 1.0 + 1e-12) {
            throw std::invalid_argument("envelope: field 'samples' must be <= 1 when not renormalized");
        }
        Envelope e;
        e.shape = EnvelopeShape::samples;
        e.sample_start = start;
        e.sample_step = step;
        e.samples = std::move(values);
        e.peak_intensity = peak_intensity;
        e.support_ = {start, start + step * static_cast<double>(e.samples.size() - 1)};
        return e;
    }

  private:
    std::pair<double, double> support_{0.0, 0.0};
    double dg_norm_ = 1.0;

    static void check_intensity(double p) {
        if (p < 0.0) throw std::invalid_argument("envelope: field 'peak_intensity' must be >= 0");
    }
    static double gauss(double t, double c, double f) {
        const double x = (t - c) / f;
        return std::exp(-4.0 * M_LN2 * x * x);
    }
    static double truncation_halfwidth(double fwhm) {
        // amplitude(c ± hw) = cutoff
        return fwhm * std::sqrt(-std::log(envelope_amplitude_cutoff) / (4.0 * M_LN2));
    }
};

// First-order low-pass on the intensity envelope (the modulator shapes
// intensity, not field). 10-90% rise time of the step response equals
// rise_time; gain <= 1 at all frequencies so energy is never increased.
inline Envelope eom_filter(const Envelope& env, double rise_time, double sample_step = 0.01) {
    if (rise_time < 0.0) throw std::invalid_argument("eom_filter: field 'rise_time' must be >= 0");
    double step = sample_step;
    const bool from_samples = env.shape == EnvelopeShape::samples;
    if (from_samples) step = env.sample_step;
    if (rise_time == 0.0) {
        // zero-rise limit: the filter is the identity on the grid
        const double t0 = env.support_begin(), t1 = env.support_end();
        const auto n = static_cast<size_t>(std::ceil((t1 - t0) / step)) + 1;
        std::vector<double> out(n);
        for (size_t i = 0; i < n; ++i) out[i] = env.amplitude(t0 + static_cast<double>(i) * step);
        return Envelope::make_samples(t0, step, std::move(out), env.peak_intensity, false);
    }
    if (step > rise_time / 5.0)
        throw std::invalid_argument("eom_filter: undersampled grid; need sample step <= rise_time/5 = " +
                                    std::to_string(rise_time / 5.0) + " ns");

    const double tau = rise_time / std::log(9.0); // 10-90% rise of 1-exp(-t/tau)
    const double tail = 8.0 * tau;
    const double t0 = env.support_begin();
    const double t1 = env.support_end() + tail;
    const auto n = static_cast<size_t>(std::ceil((t1 - t0) / step)) + 1;

    std::vector<double> out(n);
    const double alpha = std::exp(-step / tau);
    double y = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double t = t0 + static_cast<double>(i) * step;
        // exact exponential update with the input held over each step
        y = alpha * y + (1.0 - alpha) * env.amplitude(t);
        out[i] = y;
    }
    return Envelope::make_samples(t0, step, std::move(out), env.peak_intensity,
                                  /*renormalize=*/false);
}

// Rabi frequency (GHz) from drive intensity: Ω = calib·sqrt(I)·dipole,
// with the dipole weight relative to a spin-preserving transition.
inline double rabi_frequency(double intensity, const Transition& t, double calib_ghz_per_sqrt) {
    if (intensity < 0.0) throw std::invalid_argument("rabi_frequency: intensity must be >= 0");
    return calib_ghz_per_sqrt * std::sqrt(intensity) * t.dipole_weight;
}

} // namespace ramansim
