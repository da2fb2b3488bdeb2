#pragma once

#include "phasequant/recovery.hpp"
#include "phasequant/symbol.hpp"

#include <vector>

namespace phq {

struct HeatOptions {
    int nodes = 0;              // 0: 40 for n = 1, 20 for n = 2
    double fourier_scale = 1.0; // Gauss-Hermite scale for T_lambda inputs
    double prune = 1e-20;       // heat_apply_many skips nodes whose weight stays below this
};

// (H_l F)(X) = (2 pi l)^{-n} int F(Y) e^{-|X-Y|^2/(2 l)} dY
cplx heat_apply(const Symbol& F, double lambda, const PhasePoint& X, const HeatOptions& opts = {});
// Grid input: multilinear interpolation; SupportError when the kernel mass outside the grid exceeds 1e-8.
cplx heat_apply(const SymbolGrid& F, double lambda, const PhasePoint& X, const HeatOptions& opts = {});
// One global rule centred at the origin, F evaluated once per node. Suited to
// symbols that are expensive to evaluate (e.g. recovered on the fly).
std::vector<cplx> heat_apply_many(const Symbol& F, double lambda, const std::vector<PhasePoint>& Xs,
                                  const HeatOptions& opts = {});

// (S_l F)(z, zeta) = (2 pi l)^{-n} int F(x, xi) e^{-((x - i zeta)^2 + (xi + i z)^2)/(2 l)} dx dxi at real points.
cplx s_apply(const Symbol& F, double lambda, const PhasePoint& Z, const HeatOptions& opts = {});

// (T_l F)(z, zeta) = (2 pi l)^{-n} int F(x, xi) e^{(i/l)(z.xi - x.zeta)} dx dxi
cplx symplectic_fourier(const Symbol& F, double lambda, const PhasePoint& Z, const HeatOptions& opts = {});
// T_l applied twice; the intermediate transform is kept on one Gauss-Hermite rule.
std::vector<cplx> symplectic_fourier_twice(const Symbol& F, double lambda, const std::vector<PhasePoint>& Zs,
                                           const HeatOptions& opts = {});

// (M_l F)(X) = e^{-|X|^2/(2 l)} F(X)
cplx multiplier_mlambda(const Symbol& F, double lambda, const PhasePoint& X);

} // namespace phq
