#pragma once

#include <cmath>
#include <complex>

namespace elac {

struct PlaneVector {
    double x = 0.0;
    double y = 0.0;

    friend constexpr PlaneVector operator+(PlaneVector a, PlaneVector b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr PlaneVector operator-(PlaneVector a, PlaneVector b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr PlaneVector operator-(PlaneVector a) { return {-a.x, -a.y}; }
    friend constexpr PlaneVector operator*(double k, PlaneVector a) { return {k * a.x, k * a.y}; }
    friend constexpr PlaneVector operator*(PlaneVector a, double k) { return {k * a.x, k * a.y}; }
    friend constexpr PlaneVector operator/(PlaneVector a, double k) { return {a.x / k, a.y / k}; }
    friend constexpr bool operator==(PlaneVector, PlaneVector) = default;
};

struct PlanePoint {
    double x = 0.0;
    double y = 0.0;

    friend constexpr PlaneVector operator-(PlanePoint a, PlanePoint b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr PlanePoint operator+(PlanePoint p, PlaneVector v) { return {p.x + v.x, p.y + v.y}; }
    friend constexpr PlanePoint operator-(PlanePoint p, PlaneVector v) { return {p.x - v.x, p.y - v.y}; }
    friend constexpr bool operator==(PlanePoint, PlanePoint) = default;
};

constexpr double dot(PlaneVector a, PlaneVector b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(PlaneVector a, PlaneVector b) { return a.x * b.y - a.y * b.x; }
inline double norm(PlaneVector a) { return std::hypot(a.x, a.y); }
inline double distance(PlanePoint a, PlanePoint b) { return norm(a - b); }
inline PlaneVector normalized(PlaneVector a) { return a / norm(a); }
// Counterclockwise quarter turn.
constexpr PlaneVector left_normal(PlaneVector a) { return {-a.y, a.x}; }
inline PlaneVector unit_from_angle(double phi) { return {std::cos(phi), std::sin(phi)}; }
inline double angle_of(PlaneVector a) { return std::atan2(a.y, a.x); }

// Unsigned angle in [0, pi]. atan2 form stays accurate near 0 and pi where acos does not;
// normalizing first keeps very long sides from overflowing the products.
inline double angle_between(PlaneVector a, PlaneVector b) {
    a = a / norm(a);
    b = b / norm(b);
    return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

inline std::complex<double> to_complex(PlaneVector v) { return {v.x, v.y}; }
inline PlaneVector to_vector(std::complex<double> z) { return {z.real(), z.imag()}; }
inline PlanePoint to_point(std::complex<double> z) { return {z.real(), z.imag()}; }

constexpr PlanePoint origin() { return {0.0, 0.0}; }
constexpr PlaneVector as_vector(PlanePoint p) { return {p.x, p.y}; }

}  // namespace elac
