#pragma once

#include "phasequant/quadrature.hpp"

#include <vector>

namespace phq {

// Rule with one node per axis at Z and unit weight.
TensorRule point_rule(const PhasePoint& Z);
// Grid points as a tensor rule with unit weights.
TensorRule grid_rule(const PhaseGrid& grid);

// For every node Z of `outer`:
//   S(Z) = sum_W w_W g(W) exp(i coef sigma(Z, W))
// over the Gauss-Hermite rule with weight e^{-|W-center|^2/scale^2}; g excludes the weight.
// The phase factors separate per axis, so the sum is a sequence of one-axis
// contractions. Inner node counts grow with the largest frequency that outer requests.
std::vector<cplx> sigma_transform(const Integrand& g, const PhasePoint& center, double scale, int base_nodes, double coef,
                                  const TensorRule& outer);

// Same with the inner rule and the values g(W) (weight excluded) supplied.
std::vector<cplx> sigma_transform_values(const TensorRule& inner, std::vector<cplx> g, double coef, const TensorRule& outer);

cplx sigma_transform_at(const Integrand& g, const PhasePoint& center, double scale, int base_nodes, double coef,
                        const PhasePoint& Z);

// The inner rule sigma_transform would use.
GaussHermiteRule sigma_inner_rule(const PhasePoint& center, double scale, int base_nodes, double coef,
                                  const TensorRule& outer);

// Tensor with axis 0 fastest. out has axis `axis` replaced by K's row count;
// K is row-major (rows x cols) with cols == dims[axis].
std::vector<cplx> contract_axis(const std::vector<cplx>& in, const std::vector<std::size_t>& dims, int axis,
                                const std::vector<cplx>& K, std::size_t rows);

} // namespace phq
