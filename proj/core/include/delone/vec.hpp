#pragma once

#include <cmath>
#include <compare>

namespace delone {

// Point or displacement in R^d, d in {1, 2}. One-dimensional data keeps y == 0.
struct Vec {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec& operator+=(Vec o) { x += o.x; y += o.y; return *this; }
    constexpr Vec& operator-=(Vec o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec& operator*=(double s) { x *= s; y *= s; return *this; }

    friend constexpr Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec operator-(Vec a) { return {-a.x, -a.y}; }
    friend constexpr Vec operator*(double s, Vec a) { return {s * a.x, s * a.y}; }
    friend constexpr Vec operator*(Vec a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec a, Vec b) = default;
};

constexpr double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec a, Vec b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec a) { return std::hypot(a.x, a.y); }
inline double distance(Vec a, Vec b) { return norm(a - b); }

// Lexicographic order (x first, then y); coordinates closer than tol count as equal.
inline bool lex_less(Vec a, Vec b, double tol = 0.0) {
    if (a.x < b.x - tol) return true;
    if (b.x < a.x - tol) return false;
    return a.y < b.y - tol;
}

inline bool near(Vec a, Vec b, double tol) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

// Volume of the closed ball B(0, r) in R^d.
inline double ball_volume(int dim, double r) {
    return dim == 1 ? 2.0 * r : M_PI * r * r;
}

}  // namespace delone
