#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <optional>
#include <ostream>
#include <utility>

#include "subradiance/chain.hpp"
#include "subradiance/kernels.hpp"
#include "subradiance/modes.hpp"

namespace subradiance {

/// Dense non-Hermitian effective Hamiltonian of the chain, in units of
/// Gamma. Complex-symmetric (H = H^T) because every entry depends only on
/// |z_j - z_l|; it is not Hermitian.
struct EffectiveHamiltonian {
  ComplexMatrix matrix;
  std::optional<std::pair<ComplexMatrix, ComplexMatrix>> parts;  // (guided, free-space)
  ChainParams params;
};

namespace detail {

/// Entries depend only on m = |j - l|, so build the first row once and
/// spread it along the diagonals.
inline ComplexMatrix toeplitz_from_first_row(const ComplexVector& row) {
  const Eigen::Index n = row.size();
  ComplexMatrix h(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < n; ++l) h(j, l) = row[std::abs(j - l)];
  return h;
}

}  // namespace detail

/// Guided part: H_1D[j][l] = -(i/2) e^{i beta |j-l|}, resonant case k_1D = k0.
inline ComplexMatrix build_guided(const ChainParams& params) {
  params.validate();
  const double beta = params.beta();
  ComplexVector row(params.n_atoms);
  for (int m = 0; m < params.n_atoms; ++m) {
    const double phi = beta * m;
    row[m] = std::complex<double>(0.0, -0.5) *
             std::complex<double>(std::cos(phi), std::sin(phi));
  }
  return detail::toeplitz_from_first_row(row);
}

/// Free-space part: diagonal -i gamma/2, off-diagonal -i V_jl e^{i beta |j-l|}.
/// The geometry-independent Lamb shift is absorbed into the renormalized
/// transition frequency and does not appear here.
inline ComplexMatrix build_freespace(const ChainParams& params) {
  params.validate();
  const double beta = params.beta();
  ComplexVector row(params.n_atoms);
  row[0] = std::complex<double>(0.0, -0.5 * params.gamma_fs);
  for (int m = 1; m < params.n_atoms; ++m) {
    if (params.gamma_fs == 0.0) {
      row[m] = 0.0;
      continue;
    }
    const double x = beta * m;
    const std::complex<double> v = coupling_vjl(x, params.gamma_fs);
    row[m] = std::complex<double>(0.0, -1.0) * v *
             std::complex<double>(std::cos(x), std::sin(x));
  }
  return detail::toeplitz_from_first_row(row);
}

/// Total H_eff = H_1D + H_fs. Parts retention is opt-in to halve memory on
/// large sweeps.
inline EffectiveHamiltonian build_total(const ChainParams& params,
                                        bool keep_parts = false) {
  EffectiveHamiltonian h;
  h.params = params;
  ComplexMatrix guided = build_guided(params);
  ComplexMatrix freespace = build_freespace(params);
  h.matrix = guided + freespace;
  if (keep_parts) h.parts = std::make_pair(std::move(guided), std::move(freespace));
  return h;
}

/// Debugging dump: one header line, then N rows of "re,im" pairs separated
/// by single spaces. Not a stability-guaranteed format.
inline void dump_matrix(const EffectiveHamiltonian& h, std::ostream& os) {
  os << "# effective hamiltonian: N=" << h.params.n_atoms
     << " d_over_lambda=" << h.params.spacing
     << " gamma_over_Gamma=" << h.params.gamma_fs
     << " layout=row-major entries=re,im\n";
  os.precision(17);
  for (Eigen::Index j = 0; j < h.matrix.rows(); ++j) {
    for (Eigen::Index l = 0; l < h.matrix.cols(); ++l) {
      if (l) os << ' ';
      os << h.matrix(j, l).real() << ',' << h.matrix(j, l).imag();
    }
    os << '\n';
  }
}

}  // namespace subradiance
