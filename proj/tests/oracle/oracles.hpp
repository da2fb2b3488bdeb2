#pragma once

// Brute-force reference values for tests. Nothing here calls the library's
// quadrature, Fock or transform code; only the symbol evaluator is shared.

#include "phasequant/symbol.hpp"

#include <functional>
#include <vector>

namespace phq::oracle {

struct Rule1d {
    std::vector<double> t, w; // weight e^{-t^2} already divided out: sum w_i f(t_i) ~ int f
};

// Gauss-Hermite nodes from GSL with weights multiplied by e^{t^2}, scaled by s.
Rule1d hermite_line(int m, double s = 1.0);

// Normalized Hermite functions h_0..h_{N-1} at u from the physicists' polynomials.
std::vector<double> hermite_functions(double u, int N);
// h_k'(u) from H_k' = 2k H_{k-1}.
std::vector<double> hermite_derivatives(double u, int N);

// Psi_X(u), n = 1.
cplx coherent(double x, double xi, double u);

// int Psi_X conj(Psi_Y) du, n = 1 or 2 (X and Y given as coordinate lists).
cplx overlap(const std::vector<double>& X, const std::vector<double>& Y, int m = 80);

// int Psi_X(u) h_k(u) du, n = 1.
cplx coherent_amplitude(double x, double xi, int k, int m = 80);

// int h_j u h_k du and int h_j h_k' du.
double position_element(int j, int k, int m = 80);
double derivative_element(int j, int k, int m = 80);

// <W_X h_k, h_j> with (W_X f)(u) = e^{i xi u - i x xi / 2} f(u - x).
cplx translation_element(double x, double xi, int j, int k, int m = 120);

struct KernelOptions {
    int outer_nodes = 80;
    int xi_nodes = 80;
    double xi_scale = 1.0; // Gauss-Hermite scale in xi; F should decay at least like e^{-xi^2/scale^2}
};

// <Op^W(F) h_k, h_j> from K(x,y) = (2 pi)^{-1} int F((x+y)/2, xi) e^{i(x-y) xi} dxi.
// n = 1. Throws OracleUnavailable when F does not decay in xi.
cplx kernel_oracle(const Symbol& F, int j, int k, const KernelOptions& opts = {});

// F(x, xi) = int K(x + s/2, x - s/2) e^{-i s xi} ds for a kernel given as a function.
cplx weyl_symbol_from_kernel(const std::function<cplx(double, double)>& K, double x, double xi, int m = 120);

} // namespace phq::oracle
