#pragma once

// Unit conventions used throughout:
//   frequencies/energies in GHz (E/h), times in ns, rates in ns^-1,
//   magnetic field in T, temperature in K, intensities in nW/um^2.
// Hamiltonians are stored in ordinary-frequency units; the equations of
// motion carry the 2*pi explicitly.

namespace ramansim {

struct PhysicalConstants {
    // Bohr magneton over Planck constant, GHz per tesla (CODATA).
    static constexpr double mu_b_over_h_ghz_per_t = 13.996;
    // Boltzmann constant over Planck constant, GHz per kelvin (CODATA).
    static constexpr double k_b_over_h_ghz_per_k = 20.836619;
};

inline constexpr double two_pi = 6.283185307179586476925286766559;

} // namespace ramansim
