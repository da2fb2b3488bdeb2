#pragma once

#include "phasequant/fock.hpp"
#include "phasequant/quadrature.hpp"
#include "phasequant/symbol.hpp"

#include <algorithm>
#include <vector>

namespace phq {

enum class Provenance { weyl_symbol, aw_symbol, fock_matrix };
const char* provenance_name(Provenance p);

struct QuadratureSettings {
    // Gauss-Hermite nodes per axis; 0 selects 40 for n = 1 and 20 for n = 2.
    int nodes = 0;
    int resolved(int n) const { return nodes > 0 ? nodes : (n == 1 ? 40 : 20); }
    // Matrix quantization: entries up to index N-1 carry polynomial degree 2N
    // times a Gaussian the rule does not absorb; 3N per axis reaches rounding
    // level on the corner entries.
    int for_matrix(int n, int cutoff) const { return nodes > 0 ? nodes : std::max(resolved(n), 3 * cutoff); }
};

// Source of the brackets <A Psi_X, Psi_Y>.
class BracketProvider {
public:
    virtual ~BracketProvider() = default;
    virtual int n() const = 0;
    virtual Provenance provenance() const = 0;
    virtual cplx bracket(const PhasePoint& X, const PhasePoint& Y) const = 0;
    // <A Psi_{X+Z}, Psi_{X-Z}> for every node Z of `Z`, in node order.
    virtual std::vector<cplx> symmetric_brackets(const PhasePoint& X, const TensorRule& Z) const;
};

class WeylSymbolOperator : public BracketProvider {
public:
    explicit WeylSymbolOperator(Symbol F, QuadratureSettings q = {}) : F_(std::move(F)), q_(q) {}
    int n() const override { return F_.n(); }
    Provenance provenance() const override { return Provenance::weyl_symbol; }
    cplx bracket(const PhasePoint& X, const PhasePoint& Y) const override;
    std::vector<cplx> symmetric_brackets(const PhasePoint& X, const TensorRule& Z) const override;
    const Symbol& symbol() const { return F_; }

private:
    Symbol F_;
    QuadratureSettings q_;
};

class AWSymbolOperator : public BracketProvider {
public:
    explicit AWSymbolOperator(Symbol G, QuadratureSettings q = {}) : G_(std::move(G)), q_(q) {}
    int n() const override { return G_.n(); }
    Provenance provenance() const override { return Provenance::aw_symbol; }
    cplx bracket(const PhasePoint& X, const PhasePoint& Y) const override;
    std::vector<cplx> symmetric_brackets(const PhasePoint& X, const TensorRule& Z) const override;
    const Symbol& symbol() const { return G_; }

private:
    Symbol G_;
    QuadratureSettings q_;
};

class MatrixOperator : public BracketProvider {
public:
    explicit MatrixOperator(FockMatrix M);
    int n() const override { return M_.basis.n; }
    Provenance provenance() const override { return Provenance::fock_matrix; }
    cplx bracket(const PhasePoint& X, const PhasePoint& Y) const override;
    std::vector<cplx> symmetric_brackets(const PhasePoint& X, const TensorRule& Z) const override;
    const FockMatrix& matrix() const { return M_; }
    const FockBasis& basis() const { return M_.basis; }
    // Coherent amplitudes beyond |X| > sqrt(N)/2 lose visible mass to the cutoff.
    bool in_trust_region(const PhasePoint& X) const;

private:
    FockMatrix M_;
};

cplx weyl_bracket(const Symbol& F, const PhasePoint& X, const PhasePoint& Y, const QuadratureSettings& q = {});
cplx aw_bracket(const Symbol& G, const PhasePoint& X, const PhasePoint& Y, const QuadratureSettings& q = {});
cplx matrix_bracket(const MatrixOperator& M, const PhasePoint& X, const PhasePoint& Y);

MatrixOperator quantize_weyl(const Symbol& F, const FockBasis& basis, const QuadratureSettings& q = {});
MatrixOperator quantize_aw(const Symbol& G, const FockBasis& basis, const QuadratureSettings& q = {});

// <A Psi_X, Psi_Y> / <Psi_X, Psi_Y>
cplx bisymbol_ratio(const BracketProvider& P, const PhasePoint& X, const PhasePoint& Y);

} // namespace phq
