#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phq {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// A point of R^{2n}, n in {1, 2}. Coordinates are stored as (x_1..x_n, xi_1..xi_n).
class PhasePoint {
public:
    PhasePoint() = default;
    explicit PhasePoint(int n);
    PhasePoint(int n, std::span<const double> coords);
    static PhasePoint of(double x, double xi);
    static PhasePoint of(double x1, double x2, double xi1, double xi2);

    int n() const { return n_; }
    int dim() const { return 2 * n_; }
    double operator[](int axis) const { return c_[axis]; }
    double& operator[](int axis) { return c_[axis]; }
    double x(int j) const { return c_[j]; }
    double xi(int j) const { return c_[n_ + j]; }
    std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(2 * n_)}; }
    std::vector<double> to_vector() const { return {c_.begin(), c_.begin() + 2 * n_}; }

    double sq_norm() const;
    double norm() const;

    PhasePoint operator+(const PhasePoint& o) const;
    PhasePoint operator-(const PhasePoint& o) const;
    PhasePoint operator-() const;
    PhasePoint operator*(double s) const;
    bool operator==(const PhasePoint& o) const;

    std::string str() const;

private:
    int n_ = 1;
    std::array<double, 4> c_{};
};

inline PhasePoint operator*(double s, const PhasePoint& p) { return p * s; }

// sigma((x, xi), (y, eta)) = y . xi - x . eta
double symplectic(const PhasePoint& X, const PhasePoint& Y);
double dot(const PhasePoint& X, const PhasePoint& Y);

void check_same_dimension(const PhasePoint& X, const PhasePoint& Y);

struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;
    double value(int i) const;
};

// Tensor grid over R^{2n}; enumeration runs axis 0 fastest.
class PhaseGrid {
public:
    PhaseGrid() = default;
    PhaseGrid(int n, std::vector<GridAxis> axes);
    // "lo:hi:count" for each of the 2n axes, comma separated.
    static PhaseGrid parse(std::string_view spec, int n);

    int n() const { return n_; }
    const std::vector<GridAxis>& axes() const { return axes_; }
    std::size_t size() const;
    PhasePoint point(std::size_t index) const;
    std::vector<PhasePoint> points() const;
    std::string str() const;

private:
    int n_ = 1;
    std::vector<GridAxis> axes_;
};

} // namespace phq
