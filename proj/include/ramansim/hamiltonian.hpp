#pragma once

#include <cmath>

#include "ramansim/density_matrix.hpp"
#include "ramansim/envelope.hpp"
#include "ramansim/sequence.hpp"

namespace ramansim {

// Rotating-frame Hamiltonian builder for one period of a two-color
// sequence. With a single laser on at a time, the frame of the active
// laser makes every coupling static: trion diagonals carry the laser
// detunings (including the per-shot noise offsets), off-diagonals carry
// Ω_i(t)/2 for every transition the laser couples to.
//
// The pump->control frame change happens in the gap between the pulses,
// where the state is near-diagonal; ground-ground coherences are frame
// invariant (both frames shift trion energies only), so the state needs
// no transformation at the switch. lab_frame mode keeps the fixed
// zero-field frame with explicitly time-dependent drive phases, for
// validating that approximation.
class FrameHamiltonian {
  public:
    FrameHamiltonian(const Sequence& seq, const LevelSystem& ls, NoiseDraw noise,
                     bool lab_frame = false)
        : seq_(&seq), ls_(&ls), noise_(noise), lab_frame_(lab_frame) {
        // Lasers sit at the nominal transition frequency plus the set
        // detuning; the per-shot noise offsets displace the transitions
        // away from the laser and enter through the diagonal only.
        pump_freq_ = seq.pump.laser_frequency(ls);
        control_freq_ = seq.control.laser_frequency(ls);

        const bool pump_first = seq.pump.envelope.support_begin() <= seq.control.envelope.support_begin();
        const double first_end = pump_first ? seq.pump.envelope.support_end()
                                            : seq.control.envelope.support_end();
        const double second_begin = pump_first ? seq.control.envelope.support_begin()
                                               : seq.pump.envelope.support_begin();
        boundary_ = 0.5 * (first_end + second_begin);
        pump_first_ = pump_first;
    }

    double frame_frequency(double t_in_period) const {
        if (lab_frame_) return 0.0;
        const bool first = t_in_period < boundary_;
        return (first == pump_first_) ? pump_freq_ : control_freq_;
    }

    // H in GHz at a time within [0, period).
    Matrix4cd at(double t) const {
        Matrix4cd h = Matrix4cd::Zero();
        const double f = frame_frequency(t);
        h(hole_down, hole_down) = ls_->level_energies[hole_down] - 0.5 * noise_.eps_spin;
        h(hole_up, hole_up) = ls_->level_energies[hole_up] + 0.5 * noise_.eps_spin;
        h(trion_down, trion_down) = ls_->level_energies[trion_down] + noise_.eps_optical - f;
        h(trion_up, trion_up) = ls_->level_energies[trion_up] + noise_.eps_optical - f;

        const double ip = seq_->pump.envelope.intensity(t);
        const double ic = seq_->control.envelope.intensity(t);
        // one laser at a time; if filter tails overlap, the stronger wins
        if (ip > 0.0 || ic > 0.0) {
            const bool use_pump = ip >= ic;
            add_drive(h, use_pump ? seq_->pump : seq_->control, use_pump ? ip : ic,
                      use_pump ? pump_freq_ : control_freq_, t);
        }
        return h;
    }

    bool drive_active(double t) const {
        return seq_->pump.envelope.intensity(t) > 0.0 || seq_->control.envelope.intensity(t) > 0.0;
    }

    // Discontinuities of H within one period: envelope edges and the
    // frame switch. Integrators must not step across these.
    std::vector<double> breakpoints() const {
        std::vector<double> b{0.0,
                              seq_->pump.envelope.support_begin(),
                              seq_->pump.envelope.support_end(),
                              seq_->control.envelope.support_begin(),
                              seq_->control.envelope.support_end(),
                              boundary_,
                              seq_->period};
        std::sort(b.begin(), b.end());
        std::vector<double> out;
        for (double x : b) {
            if (x < 0.0 || x > seq_->period) continue;
            if (out.empty() || x - out.back() > 1e-9) out.push_back(x);
        }
        return out;
    }

    double pump_laser_frequency() const { return pump_freq_; }
    double control_laser_frequency() const { return control_freq_; }
    const NoiseDraw& noise() const { return noise_; }

  private:
    const Sequence* seq_;
    const LevelSystem* ls_;
    NoiseDraw noise_;
    bool lab_frame_ = false;
    bool pump_first_ = true;
    double pump_freq_ = 0.0, control_freq_ = 0.0, boundary_ = 0.0;

    void add_drive(Matrix4cd& h, const Pulse& pulse, double intensity, double laser_freq,
                   double t) const {
        for (const Transition& tr : ls_->transitions) {
            if (!seq_->off_resonant_couplings && tr.label != pulse.target_label) continue;
            const double omega = rabi_frequency(intensity, tr, seq_->rabi_calib);
            if (omega == 0.0) continue;
            complexd half(0.5 * omega, 0.0);
            if (lab_frame_) {
                const double phase = -two_pi * laser_freq * t;
                half *= complexd(std::cos(phase), std::sin(phase));
            }
            h(tr.upper, tr.lower) += half;
            h(tr.lower, tr.upper) += std::conj(half);
        }
    }
};

} // namespace ramansim
