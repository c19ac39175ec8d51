#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace steiner {

// Absolute tolerances; instances are assumed normalized to diameter O(1).
inline constexpr double kTolGeom = 1e-9;
inline constexpr double kTolLen = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt3 = 1.73205080756887729353;

/// A point of R^d, d >= 2, with finite coordinates.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);

    static Point zero(std::size_t dim);

    std::size_t dim() const noexcept { return c_.size(); }
    double operator[](std::size_t i) const { return c_[i]; }
    double& operator[](std::size_t i) { return c_[i]; }
    std::span<const double> coords() const noexcept { return c_; }

    Point& operator+=(const Point& o);
    Point& operator-=(const Point& o);
    Point& operator*=(double s);
    Point& operator/=(double s);

    double dot(const Point& o) const;
    double squared_norm() const { return dot(*this); }
    double norm() const;
    Point normalized() const;

    bool operator==(const Point&) const = default;

private:
    std::vector<double> c_;
};

Point operator+(Point a, const Point& b);
Point operator-(Point a, const Point& b);
Point operator*(Point a, double s);
Point operator*(double s, Point a);
Point operator/(Point a, double s);
Point operator-(Point a);

/// Euclidean distance; throws PreconditionError on dimension mismatch.
double distance(const Point& p, const Point& q);

/// Angle in [0, pi] between rays v->a and v->b.
double angle_at(const Point& v, const Point& a, const Point& b);

/// Angle in [0, pi] between two nonzero vectors.
double angle_between(const Point& u, const Point& w);

/// Closed segment with distinct endpoints.
class Segment {
public:
    Segment(Point a, Point b);
    const Point& a() const noexcept { return a_; }
    const Point& b() const noexcept { return b_; }
    double length() const { return distance(a_, b_); }
    Point at(double t) const;

private:
    Point a_;
    Point b_;
};

class Ball {
public:
    Ball(Point center, double radius);
    const Point& center() const noexcept { return center_; }
    double radius() const noexcept { return radius_; }

private:
    Point center_;
    double radius_;
};

/// Parameter interval [t0, t1] of the segment a + t(b - a), t in [0,1], lying in the closed
/// ball. Returns false when the intersection is empty or a single tangency point.
bool segment_ball_interval(const Point& a, const Point& b, const Point& center, double radius,
                           double& t0, double& t1);

/// Parameters t in [0,1] where |a + t(b - a) - center| == radius. A tangency yields one root.
std::vector<double> segment_sphere_roots(const Point& a, const Point& b, const Point& center,
                                         double radius);

/// Smallest distance between two segments in R^d.
double segment_distance(const Point& a0, const Point& a1, const Point& b0, const Point& b1);

/// Distance from q to the segment [a b].
double point_segment_distance(const Point& q, const Point& a, const Point& b);

/// Euclidean distance from q to conv(points); computed with Wolfe's minimum-norm-point method.
double hull_distance(std::span<const Point> points, const Point& q);

/// True iff q lies in conv(points) up to kTolGeom.
bool convex_hull_contains(std::span<const Point> points, const Point& q);

}  // namespace steiner
