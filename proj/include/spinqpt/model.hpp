// model.hpp — XXZ central spin model: parameters, derived scales, and the
// exact per-sector eigensystem of the uniform-coupling Hamiltonian
//   H = w0*Sz + w*Jz + A*(J+ S- + J- S+) + 2*Delta*Jz*Sz,   j = N/2.
//
// Total excitation number is conserved, so apart from the two unpaired edge
// states the spectrum decomposes into 2x2 sectors spanned by |up,n-1> and
// |dn,n>, n in [1, 2j].

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace spinqpt {

// Physical inputs, hbar = 1 units throughout.
struct ModelParams {
    double omega0{1.0};  // central-spin transition frequency, > 0
    double omega{1.0};   // bath-spin frequency, > 0
    double A{0.0};       // transverse coupling per bath spin, >= 0
    double delta{0.0};   // longitudinal coupling, any sign
    int N{1};            // number of bath spins, >= 1

    double j() const { return 0.5 * static_cast<double>(N); }

    void validate() const {
        if (!(omega0 > 0.0)) throw std::invalid_argument("ModelParams: omega0 must be > 0");
        if (!(omega > 0.0)) throw std::invalid_argument("ModelParams: omega must be > 0");
        if (!(A >= 0.0)) throw std::invalid_argument("ModelParams: A must be >= 0");
        if (N < 1) throw std::invalid_argument("ModelParams: N must be >= 1");
    }
};

// Derived frequencies and dimensionless couplings. g_tilde and lambda_c only
// exist when omega_tilde * omega0_tilde > 0; they are left empty otherwise
// rather than reported as NaN.
struct DerivedParams {
    double j{};
    double lambda{};         // collective coupling A*sqrt(N)
    double eta{};            // omega0 / omega
    double omega_tilde{};    // omega - delta
    double omega0_tilde{};   // omega0 - N*delta
    double g{};              // lambda / sqrt(omega0*omega)
    std::optional<double> g_tilde;   // lambda / sqrt(omega_tilde*omega0_tilde)
    std::optional<double> lambda_c;  // sqrt(omega0_tilde*omega_tilde)
};

DerivedParams derive(const ModelParams& p);

// Back-solve the per-spin coupling from a target g_tilde:
//   A = g_tilde * sqrt(omega_tilde*omega0_tilde / N).
// Throws std::domain_error when g_tilde is undefined for these frequencies.
ModelParams with_g_tilde(const ModelParams& tpl, double g_tilde);

// Sector bookkeeping for excitation number n in [1, 2j].
struct BlockIndex {
    int n{};
    double m{};    // n - 1 - j (half-integer for odd N)
    double k_n{};  // (2j - n + 1) * n

    BlockIndex(const ModelParams& p, int n_);
};

// 2x2 sector Hamiltonian in the (|up,n-1>, |dn,n>) basis.
struct BlockMatrix {
    double up_up{};
    double dn_dn{};
    double off{};  // A*sqrt(k_n)
};

BlockMatrix block_matrix(const ModelParams& p, int n);

// Closed-form eigensystem of one sector. Eigenvectors are unit-norm with
// c_dn_minus >= 0 and c_dn_plus >= 0; for Omega1 = 0 the bare basis states
// are returned, ordered by diagonal energy (fixed order on full degeneracy).
struct BlockSpectrum {
    double E_minus{};
    double E_plus{};
    double c_up_minus{}, c_dn_minus{};
    double c_up_plus{}, c_dn_plus{};
    double Omega1{}, Omega2{}, Omega3{};
};

BlockSpectrum block_eigensystem(const ModelParams& p, int n);

// The two states left unpaired by the sector decomposition.
enum class EdgeLabel { down_zero, up_full };

struct EdgeState {
    EdgeLabel label{};
    double energy{};
};

// Returns (down_zero, up_full):
//   E(|dn,0>)  = -omega0/2 - (omega-delta)*j
//   E(|up,2j>) = +omega0/2 + (omega+delta)*j
std::pair<EdgeState, EdgeState> edge_state_energies(const ModelParams& p);

}  // namespace spinqpt
