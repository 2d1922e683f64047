#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "ramansim/level_system.hpp"

namespace ramansim {

using Matrix4cd = Eigen::Matrix4cd;
using Vector4cd = Eigen::Vector4cd;
using complexd = std::complex<double>;

// 4x4 density matrix over (|⇓>, |⇑>, |⇓⇑↓>, |⇑⇓↑>). Stored as a plain
// Eigen matrix; these helpers enforce the state invariants.

inline Matrix4cd pure_state(int level) {
    Matrix4cd rho = Matrix4cd::Zero();
    rho(level, level) = 1.0;
    return rho;
}

inline Matrix4cd mixed_ground_state(double n_up) {
    Matrix4cd rho = Matrix4cd::Zero();
    rho(hole_down, hole_down) = 1.0 - n_up;
    rho(hole_up, hole_up) = n_up;
    return rho;
}

// Thermal mixture of the two hole states per the Boltzmann ratio.
inline Matrix4cd thermal_ground_state(const LevelSystem& ls) {
    const double r = boltzmann_ratio(ls); // N⇑/N⇓
    return mixed_ground_state(r / (1.0 + r));
}

struct StateCheck {
    double hermiticity_error = 0.0;
    double trace_error = 0.0;
    double min_eigenvalue = 0.0;
    bool ok(double herm_tol = 1e-12, double trace_tol = 1e-9, double pos_tol = -1e-9) const {
        return hermiticity_error <= herm_tol && std::abs(trace_error) <= trace_tol &&
               min_eigenvalue >= pos_tol;
    }
};

inline StateCheck check_state(const Matrix4cd& rho) {
    StateCheck c;
    c.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    c.trace_error = rho.trace().real() - 1.0;
    Eigen::SelfAdjointEigenSolver<Matrix4cd> es(0.5 * (rho + rho.adjoint()),
                                                Eigen::EigenvaluesOnly);
    c.min_eigenvalue = es.eigenvalues().minCoeff();
    return c;
}

inline void require_valid_state(const Matrix4cd& rho, const char* where) {
    const StateCheck c = check_state(rho);
    if (!c.ok()) {
        throw std::runtime_error(std::string(where) +
                                 ": density matrix invariant violated (hermiticity " +
                                 std::to_string(c.hermiticity_error) + ", trace-1 " +
                                 std::to_string(c.trace_error) + ", min eigenvalue " +
                                 std::to_string(c.min_eigenvalue) + ")");
    }
}

inline double population(const Matrix4cd& rho, int level) { return rho(level, level).real(); }

} // namespace ramansim
