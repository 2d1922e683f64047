#pragma once

#include <sstream>
#include <stdexcept>

#include "ramansim/envelope.hpp"
#include "ramansim/level_system.hpp"

namespace ramansim {

struct SchedulingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One timed drive: an intensity envelope addressing a transition at a
// detuning from it. The absolute laser frequency is target + detuning.
struct Pulse {
    Envelope envelope;
    int target_label = 0;   // transition label 1..4
    double detuning = 0.0;  // GHz, ν_L − ν_target

    double laser_frequency(const LevelSystem& ls) const {
        return ls.transition(target_label).frequency_ghz + detuning;
    }
};

// Two-color pump/control schedule with repetition. Immutable.
struct Sequence {
    Pulse pump;
    Pulse control;
    double period = 0.0;   // ns
    long n_repeats = 1;
    double eom_rise_time = 0.0;  // ns; 0 = ideal edges
    double rabi_calib = 1.0;     // GHz per sqrt(nW/um^2)
    bool off_resonant_couplings = true;

    double control_start() const { return control.envelope.support_begin(); }
    double pump_end() const { return pump.envelope.support_end(); }
};

namespace detail {
inline std::string interval_str(double a, double b) {
    std::ostringstream os;
    os << "[" << a << ", " << b << ") ns";
    return os.str();
}
} // namespace detail

inline Sequence build_sequence(Pulse pump, Pulse control, double period, long n_repeats,
                               double eom_rise_time = 0.0, double rabi_calib = 1.0,
                               bool off_resonant_couplings = true) {
    if (!(period > 0.0)) throw SchedulingError("sequence: period must be > 0");
    if (n_repeats < 1) throw SchedulingError("sequence: n_repeats must be >= 1");
    if (pump.target_label < 1 || pump.target_label > 4 || control.target_label < 1 ||
        control.target_label > 4)
        throw SchedulingError("sequence: pulse target labels must be 1..4");

    auto check_fit = [&](const char* name, const Envelope& e) {
        if (e.support_begin() < 0.0 || e.support_end() > period) {
            throw SchedulingError(std::string("sequence: ") + name + " envelope " +
                                  detail::interval_str(e.support_begin(), e.support_end()) +
                                  " does not fit in period " + std::to_string(period) + " ns");
        }
    };
    check_fit("pump", pump.envelope);
    check_fit("control", control.envelope);

    const double p0 = pump.envelope.support_begin(), p1 = pump.envelope.support_end();
    const double c0 = control.envelope.support_begin(), c1 = control.envelope.support_end();
    if (std::max(p0, c0) < std::min(p1, c1)) {
        throw SchedulingError("sequence: pump " + detail::interval_str(p0, p1) +
                              " overlaps control " + detail::interval_str(c0, c1));
    }

    Sequence s;
    s.pump = std::move(pump);
    s.control = std::move(control);
    s.period = period;
    s.n_repeats = n_repeats;
    s.eom_rise_time = eom_rise_time;
    s.rabi_calib = rabi_calib;
    s.off_resonant_couplings = off_resonant_couplings;
    if (eom_rise_time > 0.0) {
        s.pump.envelope = eom_filter(s.pump.envelope, eom_rise_time);
        s.control.envelope = eom_filter(s.control.envelope, eom_rise_time);
    }
    return s;
}

} // namespace ramansim
