#include "spinqpt/dense_oracle.hpp"

#include <cmath>
#include <string>

namespace spinqpt {

namespace {

void check_cap(int N, int max_n) {
    if (N > max_n) {
        throw std::length_error("dense oracle: N=" + std::to_string(N) +
                                " exceeds the dense-solve cap " + std::to_string(max_n));
    }
}

}  // namespace

Eigen::MatrixXd oracle_hamiltonian(double omega0, double omega, double A, double delta, int N) {
    const int nb = N + 1;  // bath levels q = 0..N, m = q - j
    const int dim = 2 * nb;
    const double j = 0.5 * N;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);

    for (int q = 0; q < nb; ++q) {
        const double m = q - j;
        const int iu = oracle_index(N, true, q);
        const int id = oracle_index(N, false, q);
        H(iu, iu) = 0.5 * omega0 + omega * m + delta * m;   // Sz = +1/2
        H(id, id) = -0.5 * omega0 + omega * m - delta * m;  // Sz = -1/2
    }
    // A*(J+ S- + J- S+): couples |up, m> <-> |dn, m+1> with the usual
    // ladder element sqrt(j(j+1) - m(m+1)).
    for (int q = 0; q + 1 < nb; ++q) {
        const double m = q - j;
        const double c = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        const int iu = oracle_index(N, true, q);
        const int id = oracle_index(N, false, q + 1);
        H(iu, id) += A * c;
        H(id, iu) += A * c;
    }
    return H;
}

std::vector<double> oracle_spectrum(const ModelParams& p, int max_n) {
    p.validate();
    check_cap(p.N, max_n);
    const Eigen::MatrixXd H = oracle_hamiltonian(p.omega0, p.omega, p.A, p.delta, p.N);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("dense oracle: eigenvalue solve failed");
    }
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

OracleGround oracle_ground(const ModelParams& p, int max_n) {
    p.validate();
    check_cap(p.N, max_n);
    const Eigen::MatrixXd H = oracle_hamiltonian(p.omega0, p.omega, p.A, p.delta, p.N);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("dense oracle: eigenvalue solve failed");
    }
    OracleGround g;
    g.energy = solver.eigenvalues()(0);
    g.vector = solver.eigenvectors().col(0);
    return g;
}

}  // namespace spinqpt
