#pragma once

// Data-parallel hot loops. Every kernel in apn::kernels has a serial
// counterpart in apn::reference that the tests compare against and the
// benchmark times side by side.

#include <cstdint>
#include <vector>

#include "apnkit/boolean_function.hpp"
#include "apnkit/vectorial.hpp"

namespace apn {

/// Sets the OpenMP team size for subsequent kernels; n <= 0 keeps the default.
void set_threads(int n);
int max_threads();

namespace kernels {

/// W(F_b, a) for every b in [0, 2^n) and a in [0, 2^m), row-major by b.
/// Requires m + n <= 24.
std::vector<std::int32_t> component_spectra(const VectorialFunction& f);

/// Full DDT, row-major by u (row 0 is the trivial difference).
std::vector<std::uint32_t> ddt(const VectorialFunction& f);

/// Maximum DDT entry over u != 0; stops early once `stop_above` is exceeded
/// (the returned value is then some entry > stop_above).
std::uint32_t differential_uniformity(const VectorialFunction& f, std::uint32_t stop_above = UINT32_MAX);

/// Trivial solutions of the r-term system (r in {4, 6}) by enumeration.
i128 trivial_solutions(const VectorialFunction& f, int r);

}  // namespace kernels

namespace reference {

/// O(4^m) double sum.
WalshSpectrum walsh_naive(const BooleanFunction& f);
std::vector<std::int32_t> component_spectra(const VectorialFunction& f);
std::vector<std::uint32_t> ddt(const VectorialFunction& f);
std::uint32_t differential_uniformity(const VectorialFunction& f);
/// N_4 by O(q^3) enumeration of x1+x2+x3+x4 = 0, F(x1)+...+F(x4) = 0.
i128 n4_enumerated(const VectorialFunction& f);
/// N_r by enumeration of r-1 free points (r in {4, 6}).
i128 n_r_enumerated(const VectorialFunction& f, int r);
/// Trivial solutions by enumeration, single threaded.
i128 trivial_solutions(const VectorialFunction& f, int r);

}  // namespace reference

}  // namespace apn
