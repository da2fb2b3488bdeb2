#include "phasequant/phase_space.hpp"

#include "phasequant/errors.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

namespace phq {

namespace {

void check_n(int n) {
    if (n != 1 && n != 2)
        throw InvalidArgument("phase-space dimension n must be 1 or 2, got " + std::to_string(n));
}

double parse_double(std::string_view s, std::string_view what) {
    std::string buf(s);
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size() || errno == ERANGE)
        throw InvalidArgument("grid: cannot parse " + std::string(what) + " '" + buf + "'");
    return v;
}

} // namespace

PhasePoint::PhasePoint(int n) : n_(n) { check_n(n); }

PhasePoint::PhasePoint(int n, std::span<const double> coords) : n_(n) {
    check_n(n);
    if (coords.size() != static_cast<std::size_t>(2 * n))
        throw InvalidArgument("phase point needs " + std::to_string(2 * n) + " coordinates, got " +
                              std::to_string(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (!std::isfinite(coords[i])) throw InvalidArgument("phase point coordinate is not finite");
        c_[i] = coords[i];
    }
}

PhasePoint PhasePoint::of(double x, double xi) {
    const double c[2] = {x, xi};
    return PhasePoint(1, c);
}

PhasePoint PhasePoint::of(double x1, double x2, double xi1, double xi2) {
    const double c[4] = {x1, x2, xi1, xi2};
    return PhasePoint(2, c);
}

double PhasePoint::sq_norm() const {
    double s = 0.0;
    for (int i = 0; i < 2 * n_; ++i) s += c_[i] * c_[i];
    return s;
}

double PhasePoint::norm() const { return std::sqrt(sq_norm()); }

PhasePoint PhasePoint::operator+(const PhasePoint& o) const {
    check_same_dimension(*this, o);
    PhasePoint r(n_);
    for (int i = 0; i < 2 * n_; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

PhasePoint PhasePoint::operator-(const PhasePoint& o) const {
    check_same_dimension(*this, o);
    PhasePoint r(n_);
    for (int i = 0; i < 2 * n_; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

PhasePoint PhasePoint::operator-() const {
    PhasePoint r(n_);
    for (int i = 0; i < 2 * n_; ++i) r.c_[i] = -c_[i];
    return r;
}

PhasePoint PhasePoint::operator*(double s) const {
    PhasePoint r(n_);
    for (int i = 0; i < 2 * n_; ++i) r.c_[i] = s * c_[i];
    return r;
}

bool PhasePoint::operator==(const PhasePoint& o) const {
    if (n_ != o.n_) return false;
    for (int i = 0; i < 2 * n_; ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

std::string PhasePoint::str() const {
    std::string s = "(";
    char buf[32];
    for (int i = 0; i < 2 * n_; ++i) {
        std::snprintf(buf, sizeof buf, "%.6g", c_[i]);
        if (i) s += ", ";
        s += buf;
    }
    return s + ")";
}

void check_same_dimension(const PhasePoint& X, const PhasePoint& Y) {
    if (X.n() != Y.n()) throw InvalidArgument("phase points have different dimensions");
}

double symplectic(const PhasePoint& X, const PhasePoint& Y) {
    check_same_dimension(X, Y);
    double s = 0.0;
    for (int j = 0; j < X.n(); ++j) s += Y.x(j) * X.xi(j) - X.x(j) * Y.xi(j);
    return s;
}

double dot(const PhasePoint& X, const PhasePoint& Y) {
    check_same_dimension(X, Y);
    double s = 0.0;
    for (int i = 0; i < X.dim(); ++i) s += X[i] * Y[i];
    return s;
}

double GridAxis::value(int i) const {
    if (count == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

PhaseGrid::PhaseGrid(int n, std::vector<GridAxis> axes) : n_(n), axes_(std::move(axes)) {
    check_n(n);
    if (axes_.size() != static_cast<std::size_t>(2 * n))
        throw InvalidArgument("grid needs " + std::to_string(2 * n) + " axes, got " + std::to_string(axes_.size()));
    for (const auto& a : axes_) {
        if (a.count < 1) throw InvalidArgument("grid axis count must be >= 1");
        if (!std::isfinite(a.lo) || !std::isfinite(a.hi)) throw InvalidArgument("grid bounds must be finite");
        if (a.count > 1 && !(a.lo < a.hi)) throw InvalidArgument("grid axis needs lo < hi");
    }
}

PhaseGrid PhaseGrid::parse(std::string_view spec, int n) {
    std::vector<GridAxis> axes;
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t comma = spec.find(',', start);
        std::string_view part = spec.substr(start, comma == std::string_view::npos ? spec.npos : comma - start);
        std::size_t c1 = part.find(':');
        std::size_t c2 = c1 == part.npos ? part.npos : part.find(':', c1 + 1);
        if (c1 == part.npos || c2 == part.npos)
            throw InvalidArgument("grid axis '" + std::string(part) + "' is not lo:hi:count");
        GridAxis a;
        a.lo = parse_double(part.substr(0, c1), "lower bound");
        a.hi = parse_double(part.substr(c1 + 1, c2 - c1 - 1), "upper bound");
        std::string_view cs = part.substr(c2 + 1);
        auto [ptr, ec] = std::from_chars(cs.data(), cs.data() + cs.size(), a.count);
        if (ec != std::errc() || ptr != cs.data() + cs.size())
            throw InvalidArgument("grid: cannot parse count '" + std::string(cs) + "'");
        axes.push_back(a);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return PhaseGrid(n, std::move(axes));
}

std::size_t PhaseGrid::size() const {
    std::size_t s = 1;
    for (const auto& a : axes_) s *= static_cast<std::size_t>(a.count);
    return s;
}

PhasePoint PhaseGrid::point(std::size_t index) const {
    PhasePoint p(n_);
    for (int a = 0; a < 2 * n_; ++a) {
        const auto cnt = static_cast<std::size_t>(axes_[a].count);
        p[a] = axes_[a].value(static_cast<int>(index % cnt));
        index /= cnt;
    }
    return p;
}

std::vector<PhasePoint> PhaseGrid::points() const {
    std::vector<PhasePoint> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
    return out;
}

std::string PhaseGrid::str() const {
    std::string s;
    char buf[96];
    for (std::size_t a = 0; a < axes_.size(); ++a) {
        std::snprintf(buf, sizeof buf, "%s%.17g:%.17g:%d", a ? "," : "", axes_[a].lo, axes_[a].hi, axes_[a].count);
        s += buf;
    }
    return s;
}

} // namespace phq
