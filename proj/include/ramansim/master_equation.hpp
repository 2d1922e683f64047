#pragma once

#include <functional>
#include <vector>

#include "ramansim/hamiltonian.hpp"

namespace ramansim {

// Dissipative channels of the four-level system: the 4 radiative decays,
// ground-state spin flips (intrinsic + nonresonant randomization) and
// hole pure dephasing.
struct DissipationOps {
    struct Transfer {
        double rate = 0.0;
        int from = 0;
        int to = 0;
        int label = 0; // transition label for radiative channels, 0 otherwise
    };
    std::vector<Transfer> transfers;
    double dephasing_kz = 0.0; // κ_z = γφ/2 for L = sqrt(κ_z)(|⇑><⇑|-|⇓><⇓|)

    static DissipationOps build(const LevelSystem& ls, const NoiseParams& noise) {
        DissipationOps ops;
        for (const CollapseChannel& c : decay_channels(ls))
            ops.transfers.push_back({c.rate, c.from, c.to, c.label});
        const double kappa = noise.kappa_nr(ls.nonres_intensity);
        const double up_down = noise.gamma_flip_up_down + 0.5 * kappa;
        const double down_up = noise.gamma_flip_down_up(ls) + 0.5 * kappa;
        if (up_down > 0.0) ops.transfers.push_back({up_down, hole_up, hole_down, 0});
        if (down_up > 0.0) ops.transfers.push_back({down_up, hole_down, hole_up, 0});
        ops.dephasing_kz = 0.5 * noise.dephasing_rate();
        return ops;
    }

    double total_rate_scale() const {
        double s = 2.0 * dephasing_kz;
        for (const Transfer& t : transfers) s += t.rate;
        return s;
    }
};

// dρ/dt = -i·2π[H,ρ] + Σ_k D[L_k]ρ, H in GHz, rates in ns^-1.
inline void lindblad_rhs(const Matrix4cd& rho, const Matrix4cd& h, const DissipationOps& ops,
                         Matrix4cd& out) {
    const complexd minus_i_2pi(0.0, -two_pi);
    out.noalias() = h * rho;
    out.noalias() -= rho * h;
    out *= minus_i_2pi;

    for (const auto& tr : ops.transfers) {
        out(tr.to, tr.to) += tr.rate * rho(tr.from, tr.from);
        const double half = 0.5 * tr.rate;
        out.row(tr.from) -= half * rho.row(tr.from);
        out.col(tr.from) -= half * rho.col(tr.from);
    }
    if (ops.dephasing_kz > 0.0) {
        const double kz = ops.dephasing_kz;
        // L = sqrt(kz)(|⇑><⇑| - |⇓><⇓|): ground coherence decays at 2kz,
        // ground-trion coherences at kz/2
        out(hole_down, hole_up) -= 2.0 * kz * rho(hole_down, hole_up);
        out(hole_up, hole_down) -= 2.0 * kz * rho(hole_up, hole_down);
        for (int g = hole_down; g <= hole_up; ++g)
            for (int tl = trion_down; tl <= trion_up; ++tl) {
                out(g, tl) -= 0.5 * kz * rho(g, tl);
                out(tl, g) -= 0.5 * kz * rho(tl, g);
            }
    }
}

// Classic fixed-step RK4 over [t, t+h] with the time-dependent generator.
template <typename HamFn>
inline void rk4_step(Matrix4cd& rho, double t, double h, const HamFn& ham,
                     const DissipationOps& ops) {
    const Matrix4cd h0 = ham(t);
    const Matrix4cd h1 = ham(t + 0.5 * h);
    const Matrix4cd h2 = ham(t + h);
    Matrix4cd k1, k2, k3, k4, tmp;
    lindblad_rhs(rho, h0, ops, k1);
    tmp = rho + (0.5 * h) * k1;
    lindblad_rhs(tmp, h1, ops, k2);
    tmp = rho + (0.5 * h) * k2;
    lindblad_rhs(tmp, h1, ops, k3);
    tmp = rho + h * k3;
    lindblad_rhs(tmp, h2, ops, k4);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct EvolveOptions {
    double dt_active = 0.002; // ns, when any laser drives
    double dt_idle = 0.02;    // ns, drift/decay only
    double sample_dt = 0.1;   // ns, output sampling
    long n_periods = 1;
    bool lab_frame = false;
    bool validate_states = true;
    double max_step_when_active = 0.01; // spec guard: refuse coarser active grids
};

struct MasterEvolution {
    std::vector<double> times;        // ns, absolute
    std::vector<Matrix4cd> states;
    double period = 0.0;

    std::vector<double> population_series(int level) const {
        std::vector<double> p(states.size());
        for (size_t i = 0; i < states.size(); ++i) p[i] = population(states[i], level);
        return p;
    }
};

namespace detail {

// Integration pieces over [0, t_end]: absolute breakpoint times where the
// generator is discontinuous (envelope edges, frame switches, period
// wraps). Steps never straddle a piece boundary, and stage evaluations
// are nudged into the piece interior to pick the correct side.
inline std::vector<double> absolute_breakpoints(const std::vector<double>& per_period,
                                                double period, long n_periods, double t_end) {
    std::vector<double> out{0.0};
    for (long p = 0; p < n_periods; ++p) {
        const double base = period * static_cast<double>(p);
        for (double b : per_period) {
            const double x = base + b;
            if (x > out.back() + 1e-9 && x < t_end - 1e-9) out.push_back(x);
        }
    }
    out.push_back(t_end);
    return out;
}

} // namespace detail

// Deterministic Lindblad propagation of one noise realization of a
// sequence. Trace is preserved to rounding; state invariants are checked
// at every sample point unless disabled.
inline MasterEvolution evolve_master(const Matrix4cd& rho0, const Sequence& seq,
                                     const LevelSystem& ls, const NoiseParams& noise,
                                     NoiseDraw draw = {}, EvolveOptions opt = {}) {
    if (opt.dt_active > opt.max_step_when_active)
        throw std::invalid_argument(
            "evolve_master: active-drive step too large; required step <= " +
            std::to_string(opt.max_step_when_active) + " ns");
    require_valid_state(rho0, "evolve_master(rho0)");

    const FrameHamiltonian ham(seq, ls, draw, opt.lab_frame);
    const DissipationOps ops = DissipationOps::build(ls, noise);

    MasterEvolution ev;
    ev.period = seq.period;
    const double t_end = seq.period * static_cast<double>(opt.n_periods);
    const auto n_samples = static_cast<size_t>(std::floor(t_end / opt.sample_dt + 1e-9)) + 1;
    ev.times.reserve(n_samples);
    ev.states.reserve(n_samples);

    const std::vector<double> breaks =
        detail::absolute_breakpoints(ham.breakpoints(), seq.period, opt.n_periods, t_end);

    Matrix4cd rho = rho0;
    double t = 0.0;
    size_t next_sample = 1;
    ev.times.push_back(0.0);
    ev.states.push_back(rho);

    for (size_t bi = 0; bi + 1 < breaks.size(); ++bi) {
        double a = breaks[bi];
        const double b = breaks[bi + 1];
        // evaluate H strictly inside (a, b): correct side of every edge
        const double nudge = std::min(1e-7, 1e-6 * (b - a));
        auto hfn = [&](double ts) {
            const double tc = std::min(std::max(ts, a + nudge), b - nudge);
            double tp = std::fmod(tc, seq.period);
            return ham.at(tp);
        };
        const bool active = ham.drive_active(std::fmod(0.5 * (a + b), seq.period));
        const double dt_target = active ? opt.dt_active : opt.dt_idle;

        while (a < b - 1e-12) {
            // integrate to the next sample time or the piece end
            const double stop = std::min(b, static_cast<double>(next_sample) * opt.sample_dt);
            const auto m = std::max<long>(1, static_cast<long>(std::ceil((stop - a) / dt_target - 1e-9)));
            const double h = (stop - a) / static_cast<double>(m);
            for (long k = 0; k < m; ++k)
                rk4_step(rho, a + static_cast<double>(k) * h, h, hfn, ops);
            a = stop;
            if (std::abs(a - static_cast<double>(next_sample) * opt.sample_dt) < 1e-9 &&
                next_sample < n_samples) {
                if (opt.validate_states) require_valid_state(rho, "evolve_master");
                ev.times.push_back(a);
                ev.states.push_back(rho);
                ++next_sample;
            }
        }
        t = b;
    }
    (void)t;
    return ev;
}

struct RefinedEvolution {
    MasterEvolution evolution;
    double refinement_delta = 0.0; // max population change at the last halving
    int halvings = 0;
    bool converged = false;
};

// Step-halving wrapper: integrate, halve the step, compare populations at
// every sample point, and repeat until they change by less than `tol`.
inline RefinedEvolution evolve_master_refined(const Matrix4cd& rho0, const Sequence& seq,
                                              const LevelSystem& ls, const NoiseParams& noise,
                                              NoiseDraw draw = {}, EvolveOptions opt = {},
                                              double tol = 1e-8, int max_halvings = 4) {
    RefinedEvolution out;
    out.evolution = evolve_master(rho0, seq, ls, noise, draw, opt);
    for (int k = 0; k < max_halvings; ++k) {
        EvolveOptions finer = opt;
        finer.dt_active = 0.5 * opt.dt_active;
        finer.dt_idle = 0.5 * opt.dt_idle;
        const MasterEvolution next = evolve_master(rho0, seq, ls, noise, draw, finer);
        double delta = 0.0;
        for (size_t i = 0; i < next.states.size(); ++i)
            for (int lvl = 0; lvl < 4; ++lvl)
                delta = std::max(delta, std::abs(population(next.states[i], lvl) -
                                                 population(out.evolution.states[i], lvl)));
        out.evolution = next;
        out.refinement_delta = delta;
        out.halvings = k + 1;
        opt = finer;
        if (delta < tol) {
            out.converged = true;
            return out;
        }
    }
    return out;
}

struct Waveform {
    std::vector<double> t;         // ns
    std::vector<double> intensity; // photons/ns into the channel
    double integral() const {
        double s = 0.0;
        for (size_t i = 1; i < t.size(); ++i)
            s += 0.5 * (intensity[i] + intensity[i - 1]) * (t[i] - t[i - 1]);
        return s;
    }
};

// I_c(t) = rate_c · (upper population of channel c); its integral over
// the drive window is the mean photon number emitted into the channel.
inline Waveform emission_waveform(const MasterEvolution& ev, const LevelSystem& ls,
                                  int channel_label) {
    const Transition& tr = ls.transition(channel_label);
    Waveform w;
    w.t = ev.times;
    w.intensity.resize(ev.states.size());
    for (size_t i = 0; i < ev.states.size(); ++i)
        w.intensity[i] = tr.decay_rate * population(ev.states[i], tr.upper);
    return w;
}

// Dense Liouvillian as a 16x16 matrix acting on column-stacked ρ.
inline Eigen::MatrixXcd liouvillian_matrix(const Matrix4cd& h, const DissipationOps& ops) {
    Eigen::MatrixXcd l(16, 16);
    Matrix4cd basis, out;
    for (int c = 0; c < 16; ++c) {
        basis.setZero();
        basis(c % 4, c / 4) = 1.0;
        lindblad_rhs(basis, h, ops, out);
        for (int r = 0; r < 16; ++r) l(r, c) = out(r % 4, r / 4);
    }
    return l;
}

// Stationary state of a static generator (CW drive), via the nullspace
// with the trace constraint replacing one row.
inline Matrix4cd steady_state(const Matrix4cd& h, const DissipationOps& ops) {
    Eigen::MatrixXcd l = liouvillian_matrix(h, ops);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(16);
    for (int c = 0; c < 4; ++c) l(0, c * 4 + c) += 1.0; // trace row folded in
    b(0) = 1.0;
    const Eigen::VectorXcd v = l.fullPivLu().solve(b);
    Matrix4cd rho;
    for (int i = 0; i < 16; ++i) rho(i % 4, i / 4) = v(i);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return rho;
}

} // namespace ramansim
