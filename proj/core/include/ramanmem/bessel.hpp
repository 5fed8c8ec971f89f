#pragma once

namespace ramanmem {

// Bessel functions of the first kind for real nonnegative arguments, the only
// special functions the storage/retrieval kernels need. Power series below
// the crossover, Hankel asymptotic expansion above; absolute error stays a
// few 1e-12 on [0, 1e3].

double bessel_j0(double x);
double bessel_j1(double x);

}  // namespace ramanmem
