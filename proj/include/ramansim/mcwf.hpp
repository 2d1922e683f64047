#pragma once

#include <atomic>
#include <thread>

#include "ramansim/master_equation.hpp"
#include "ramansim/rng.hpp"

namespace ramansim {

struct ClickEvent {
    double time = 0.0;   // ns, inside the sequence period
    int label = 0;       // transition label 1..4 (0 = dark count)
    long sequence = 0;   // global sequence index
};

// Tagged stream of simulated detection events from a quantum-jump run.
struct ClickRecord {
    std::vector<ClickEvent> events;
    long n_sequences = 0;   // n_trajectories * n_repeats
    long n_repeats = 0;     // contiguous periods per trajectory
    long n_trajectories = 0;
    double period = 0.0;
    std::uint64_t rng_seed = 0;
    double gate_start = 0.0, gate_stop = 0.0; // set by detector_apply
};

struct McwfOptions {
    double dt_active = 0.002;
    double dt_idle = 0.02;
    int workers = 1;
    bool draw_noise_per_sequence = true; // false: use fixed_draw for every shot
    NoiseDraw fixed_draw{};
    double population_sample_dt = 0.0; // >0: accumulate first-period populations
    double max_jump_probability_per_step = 0.1;
    // initial diagonal mixture; empty (all zero) = thermal ground state
    std::array<double, 4> initial_populations{};
};

struct McwfResult {
    ClickRecord clicks;
    // ensemble-averaged populations over the first period (if requested)
    std::vector<double> population_times;
    std::array<std::vector<double>, 4> populations;
    long population_samples = 0;
};

namespace detail {

struct JumpChannel {
    double rate = 0.0;
    int from = 0, to = 0;
    int label = 0;      // >0 records a click
    bool dephasing = false;
};

struct McwfWorkspace {
    std::vector<JumpChannel> channels;
    Eigen::Vector4d damping; // -1/2 Σ L†L diagonal
    double max_rate_sum = 0.0;

    static McwfWorkspace build(const DissipationOps& ops) {
        McwfWorkspace w;
        w.damping.setZero();
        for (const auto& t : ops.transfers) {
            w.channels.push_back({t.rate, t.from, t.to, t.label, false});
            w.damping(t.from) += 0.5 * t.rate;
            w.max_rate_sum += t.rate;
        }
        if (ops.dephasing_kz > 0.0) {
            w.channels.push_back({ops.dephasing_kz, 0, 0, 0, true});
            w.damping(hole_down) += 0.5 * ops.dephasing_kz;
            w.damping(hole_up) += 0.5 * ops.dephasing_kz;
            w.max_rate_sum += ops.dephasing_kz;
        }
        return w;
    }
};

// dψ = (-i·2π·H - D)ψ
inline void mcwf_rhs(const Vector4cd& psi, const Matrix4cd& h, const Eigen::Vector4d& damping,
                     Vector4cd& out) {
    out.noalias() = h * psi;
    out *= complexd(0.0, -two_pi);
    for (int i = 0; i < 4; ++i) out(i) -= damping(i) * psi(i);
}

template <typename HamFn>
inline void mcwf_rk4(Vector4cd& psi, double t, double h, const HamFn& ham,
                     const Eigen::Vector4d& damping) {
    const Matrix4cd h0 = ham(t);
    const Matrix4cd h1 = ham(t + 0.5 * h);
    const Matrix4cd h2 = ham(t + h);
    Vector4cd k1, k2, k3, k4, tmp;
    mcwf_rhs(psi, h0, damping, k1);
    tmp = psi + (0.5 * h) * k1;
    mcwf_rhs(tmp, h1, damping, k2);
    tmp = psi + (0.5 * h) * k2;
    mcwf_rhs(tmp, h1, damping, k3);
    tmp = psi + h * k3;
    mcwf_rhs(tmp, h2, damping, k4);
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace detail

// Quantum-jump unraveling of the same Lindblad generator: norm-decay
// integration of the effective non-hermitian Hamiltonian, jumps when the
// squared norm crosses a uniform threshold (jump time linearly
// interpolated inside the step), channel selected by cumulative weights.
// Trajectory k always consumes stream (seed, k), so results are
// bit-identical for a fixed seed regardless of the worker count.
inline McwfResult mcwf_run(const Sequence& seq, const LevelSystem& ls, const NoiseParams& noise,
                           long n_trajectories, std::uint64_t seed, McwfOptions opt = {}) {
    if (n_trajectories < 1) throw std::invalid_argument("mcwf_run: n_trajectories must be >= 1");
    const DissipationOps ops = DissipationOps::build(ls, noise);
    const detail::McwfWorkspace ws = detail::McwfWorkspace::build(ops);
    if (ws.max_rate_sum * opt.dt_active > opt.max_jump_probability_per_step)
        throw std::invalid_argument("mcwf_run: jump probability per step exceeds the guard; "
                                    "reduce dt_active below " +
                                    std::to_string(opt.max_jump_probability_per_step /
                                                   ws.max_rate_sum) +
                                    " ns");

    const long n_pop =
        opt.population_sample_dt > 0.0
            ? static_cast<long>(std::floor(seq.period / opt.population_sample_dt + 1e-9)) + 1
            : 0;

    struct TrajOut {
        std::vector<ClickEvent> events;
        std::array<std::vector<double>, 4> pop;
    };
    std::vector<TrajOut> results(static_cast<size_t>(n_trajectories));

    // diagonal initial mixture: each trajectory samples a basis state
    std::array<double, 4> p0 = opt.initial_populations;
    double p0_sum = p0[0] + p0[1] + p0[2] + p0[3];
    if (p0_sum <= 0.0) {
        const Matrix4cd rho0 = thermal_ground_state(ls);
        for (int l = 0; l < 4; ++l) p0[static_cast<size_t>(l)] = population(rho0, l);
        p0_sum = 1.0;
    }

    auto run_trajectory = [&](long traj) {
        RngStream rng = RngStream::from(seed, static_cast<std::uint64_t>(traj));
        TrajOut& out = results[static_cast<size_t>(traj)];
        if (n_pop > 0)
            for (auto& v : out.pop) v.assign(static_cast<size_t>(n_pop), 0.0);

        Vector4cd psi = Vector4cd::Zero();
        {
            double pick = rng.next_double() * p0_sum;
            int lvl = 3;
            for (int l = 0; l < 4; ++l) {
                if (pick < p0[static_cast<size_t>(l)]) {
                    lvl = l;
                    break;
                }
                pick -= p0[static_cast<size_t>(l)];
            }
            psi(lvl) = 1.0;
        }

        // ψ is kept normalized; the physical no-jump survival exponent
        // ℓ(t) = ∫ 2<ψ|D|ψ> dt' is accumulated by trapezoid quadrature and
        // a jump fires when ℓ crosses -ln(u). This keeps the jump
        // statistics independent of integrator norm error from the fast
        // rotating-frame diagonals.
        auto decay_rate = [&](const Vector4cd& p) {
            double r = 0.0;
            for (int i = 0; i < 4; ++i) r += 2.0 * ws.damping(i) * std::norm(p(i));
            return r;
        };
        double decay_accum = 0.0;
        double decay_target = -std::log(rng.next_double_open());

        auto select_and_apply_jump = [&](Vector4cd& state, double t_jump, long global_seq,
                                         std::vector<ClickEvent>& events) {
            std::array<double, 8> w{};
            double wsum = 0.0;
            for (size_t c = 0; c < ws.channels.size(); ++c) {
                const auto& ch = ws.channels[c];
                w[c] = ch.dephasing ? ch.rate * (std::norm(state(hole_down)) +
                                                 std::norm(state(hole_up)))
                                    : ch.rate * std::norm(state(ch.from));
                wsum += w[c];
            }
            double pick = rng.next_double() * wsum;
            size_t chosen = 0;
            bool found = false;
            for (size_t c = 0; c < ws.channels.size(); ++c) {
                if (pick < w[c]) {
                    chosen = c;
                    found = true;
                    break;
                }
                pick -= w[c];
            }
            if (!found) { // rounding fallthrough: take the heaviest
                for (size_t c = 1; c < ws.channels.size(); ++c)
                    if (w[c] > w[chosen]) chosen = c;
            }
            const auto& ch = ws.channels[chosen];
            if (ch.dephasing) {
                state(trion_down) = 0.0;
                state(trion_up) = 0.0;
                state(hole_down) = -state(hole_down);
            } else {
                const complexd amp = state(ch.from);
                state.setZero();
                state(ch.to) = (std::abs(amp) > 0.0) ? amp / std::abs(amp) : complexd(1.0, 0.0);
                if (ch.label > 0) events.push_back({t_jump, ch.label, global_seq});
            }
            state /= state.norm();
            decay_accum = 0.0;
            decay_target = -std::log(rng.next_double_open());
        };

        for (long rep = 0; rep < seq.n_repeats; ++rep) {
            const NoiseDraw draw =
                opt.draw_noise_per_sequence
                    ? NoiseDraw::from_unit_normal(rng.next_normal(), ls.nonres_intensity, noise)
                    : opt.fixed_draw;
            const FrameHamiltonian ham(seq, ls, draw);
            const std::vector<double> breaks = ham.breakpoints();
            const long global_seq = traj * seq.n_repeats + rep;

            long pop_next = 0;

            for (size_t bi = 0; bi + 1 < breaks.size(); ++bi) {
                double a = breaks[bi];
                const double b = breaks[bi + 1];
                const double nudge = std::min(1e-7, 1e-6 * (b - a));
                auto hfn = [&](double ts) {
                    return ham.at(std::min(std::max(ts, a + nudge), b - nudge));
                };
                const bool active = ham.drive_active(0.5 * (a + b));
                const double dt_target = active ? opt.dt_active : opt.dt_idle;

                while (a < b - 1e-12) {
                    double stop = b;
                    if (rep == 0 && n_pop > 0 && pop_next < n_pop) {
                        const double ts = static_cast<double>(pop_next) * opt.population_sample_dt;
                        if (ts <= a + 1e-12) {
                            for (int l = 0; l < 4; ++l)
                                out.pop[static_cast<size_t>(l)][static_cast<size_t>(pop_next)] +=
                                    std::norm(psi(l));
                            ++pop_next;
                            continue;
                        }
                        stop = std::min(stop, ts);
                    }
                    const auto m = std::max<long>(
                        1, static_cast<long>(std::ceil((stop - a) / dt_target - 1e-9)));
                    const double h = (stop - a) / static_cast<double>(m);
                    for (long k = 0; k < m; ++k) {
                        double t0 = a + static_cast<double>(k) * h;
                        double hs = h;
                        // at most a few jumps can occur within one step
                        for (int pass = 0; pass < 4 && hs > 1e-13; ++pass) {
                            const Vector4cd prev = psi;
                            const double r0 = decay_rate(psi);
                            detail::mcwf_rk4(psi, t0, hs, hfn, ws.damping);
                            psi /= psi.norm();
                            const double r1 = decay_rate(psi);
                            const double dl = 0.5 * hs * (r0 + r1);
                            if (decay_accum + dl < decay_target) {
                                decay_accum += dl;
                                break;
                            }
                            // jump inside this step
                            const double f = (decay_target - decay_accum) / std::max(dl, 1e-300);
                            const double t_jump = t0 + f * hs;
                            Vector4cd at_jump = prev + f * (psi - prev);
                            at_jump /= at_jump.norm();
                            psi = at_jump;
                            select_and_apply_jump(psi, t_jump, global_seq, out.events);
                            // integrate the remainder of the step
                            t0 = t_jump;
                            hs = hs - f * hs;
                        }
                    }
                    a = stop;
                }
            }
        }
    };

    const int workers = std::max(1, opt.workers);
    if (workers == 1) {
        for (long k = 0; k < n_trajectories; ++k) run_trajectory(k);
    } else {
        std::vector<std::thread> pool;
        std::atomic<long> next{0};
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const long k = next.fetch_add(1);
                    if (k >= n_trajectories) return;
                    run_trajectory(k);
                }
            });
        for (auto& th : pool) th.join();
    }

    McwfResult res;
    res.clicks.n_trajectories = n_trajectories;
    res.clicks.n_repeats = seq.n_repeats;
    res.clicks.n_sequences = n_trajectories * seq.n_repeats;
    res.clicks.period = seq.period;
    res.clicks.rng_seed = seed;
    res.clicks.gate_start = 0.0;
    res.clicks.gate_stop = seq.period;
    for (auto& r : results)
        res.clicks.events.insert(res.clicks.events.end(), r.events.begin(), r.events.end());

    if (n_pop > 0) {
        res.population_times.resize(static_cast<size_t>(n_pop));
        for (long i = 0; i < n_pop; ++i)
            res.population_times[static_cast<size_t>(i)] =
                static_cast<double>(i) * opt.population_sample_dt;
        for (int l = 0; l < 4; ++l) {
            auto& acc = res.populations[static_cast<size_t>(l)];
            acc.assign(static_cast<size_t>(n_pop), 0.0);
            for (auto& r : results)
                for (long i = 0; i < n_pop; ++i)
                    acc[static_cast<size_t>(i)] += r.pop[static_cast<size_t>(l)][static_cast<size_t>(i)];
            for (double& v : acc) v /= static_cast<double>(n_trajectories);
        }
        res.population_samples = n_trajectories;
    }
    return res;
}

} // namespace ramansim
