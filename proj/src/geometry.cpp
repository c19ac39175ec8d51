#include "steiner/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "steiner/errors.hpp"

namespace steiner {

namespace {

void check_coords(const std::vector<double>& c) {
    if (c.size() < 2) throw PreconditionError("point dimension must be at least 2");
    for (double v : c) {
        if (!std::isfinite(v)) throw PreconditionError("point coordinate is not finite");
    }
}

void check_dims(const Point& p, const Point& q) {
    if (p.dim() != q.dim()) {
        throw PreconditionError("dimension mismatch: " + std::to_string(p.dim()) + " vs " +
                                std::to_string(q.dim()));
    }
}

}  // namespace

Point::Point(std::vector<double> coords) : c_(std::move(coords)) { check_coords(c_); }

Point::Point(std::initializer_list<double> coords) : c_(coords) { check_coords(c_); }

Point Point::zero(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

Point& Point::operator+=(const Point& o) {
    check_dims(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Point& Point::operator-=(const Point& o) {
    check_dims(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Point& Point::operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
}

Point& Point::operator/=(double s) {
    for (double& v : c_) v /= s;
    return *this;
}

double Point::dot(const Point& o) const {
    check_dims(*this, o);
    double s = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * o.c_[i];
    return s;
}

double Point::norm() const {
    double scale = 0.0;
    for (double v : c_) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (double v : c_) {
        const double w = v / scale;
        s += w * w;
    }
    return scale * std::sqrt(s);
}

Point Point::normalized() const {
    const double n = norm();
    if (n == 0.0) throw PreconditionError("cannot normalize the zero vector");
    return *this / n;
}

Point operator+(Point a, const Point& b) { return a += b; }
Point operator-(Point a, const Point& b) { return a -= b; }
Point operator*(Point a, double s) { return a *= s; }
Point operator*(double s, Point a) { return a *= s; }
Point operator/(Point a, double s) { return a /= s; }
Point operator-(Point a) { return a *= -1.0; }

double distance(const Point& p, const Point& q) {
    check_dims(p, q);
    return (p - q).norm();
}

double angle_between(const Point& u, const Point& w) {
    const double nu = u.norm();
    const double nw = w.norm();
    if (nu == 0.0 || nw == 0.0) throw PreconditionError("angle with a zero-length ray");
    // Kahan's formulation: accurate near 0 and pi, symmetric in its arguments.
    const Point a = u * nw;
    const Point b = w * nu;
    return 2.0 * std::atan2((a - b).norm(), (a + b).norm());
}

double angle_at(const Point& v, const Point& a, const Point& b) {
    check_dims(v, a);
    check_dims(v, b);
    if (distance(v, a) == 0.0 || distance(v, b) == 0.0) {
        throw PreconditionError("angle_at: ray endpoint coincides with the vertex");
    }
    return angle_between(a - v, b - v);
}

Segment::Segment(Point a, Point b) : a_(std::move(a)), b_(std::move(b)) {
    check_dims(a_, b_);
    if (distance(a_, b_) == 0.0) throw PreconditionError("zero-length segment");
}

Point Segment::at(double t) const { return a_ + (b_ - a_) * t; }

Ball::Ball(Point center, double radius) : center_(std::move(center)), radius_(radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw PreconditionError("ball radius must be positive");
    }
}

bool segment_ball_interval(const Point& a, const Point& b, const Point& center, double radius,
                           double& t0, double& t1) {
    const Point dir = b - a;
    const Point f = a - center;
    const double qa = dir.squared_norm();
    if (qa == 0.0) return false;
    const double qb = 2.0 * f.dot(dir);
    const double qc = f.squared_norm() - radius * radius;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc <= 0.0) return false;
    const double sq = std::sqrt(disc);
    // Numerically stable pair of roots.
    const double q = -0.5 * (qb + std::copysign(sq, qb));
    double r0 = q / qa;
    double r1 = (q != 0.0) ? qc / q : -r0;
    if (r0 > r1) std::swap(r0, r1);
    t0 = std::max(0.0, r0);
    t1 = std::min(1.0, r1);
    return t1 > t0;
}

std::vector<double> segment_sphere_roots(const Point& a, const Point& b, const Point& center,
                                         double radius) {
    std::vector<double> roots;
    const Point dir = b - a;
    const Point f = a - center;
    const double qa = dir.squared_norm();
    if (qa == 0.0) return roots;
    const double len = std::sqrt(qa);
    // Distance from center to the supporting line, and the foot parameter.
    const double t_foot = -f.dot(dir) / qa;
    const Point foot = f + dir * t_foot;
    const double h = foot.norm();
    const double gap = radius - h;
    if (gap < -kTolGeom) return roots;
    if (gap <= kTolGeom) {
        if (t_foot >= -kTolGeom / len && t_foot <= 1.0 + kTolGeom / len) {
            roots.push_back(std::clamp(t_foot, 0.0, 1.0));
        }
        return roots;
    }
    const double half = std::sqrt((radius - h) * (radius + h)) / len;
    for (double t : {t_foot - half, t_foot + half}) {
        if (t >= -kTolGeom / len && t <= 1.0 + kTolGeom / len) roots.push_back(std::clamp(t, 0.0, 1.0));
    }
    return roots;
}

double point_segment_distance(const Point& q, const Point& a, const Point& b) {
    const Point ab = b - a;
    const double l2 = ab.squared_norm();
    if (l2 == 0.0) return distance(q, a);
    const double t = std::clamp((q - a).dot(ab) / l2, 0.0, 1.0);
    return distance(q, a + ab * t);
}

double segment_distance(const Point& p0, const Point& p1, const Point& q0, const Point& q1) {
    // Closest points of two segments (Ericson, Real-Time Collision Detection, 5.1.9).
    const Point d1 = p1 - p0;
    const Point d2 = q1 - q0;
    const Point r = p0 - q0;
    const double a = d1.squared_norm();
    const double e = d2.squared_norm();
    const double f = d2.dot(r);
    double s = 0.0;
    double t = 0.0;
    if (a == 0.0 && e == 0.0) return r.norm();
    if (a == 0.0) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = d1.dot(r);
        if (e == 0.0) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = d1.dot(d2);
            const double denom = a * e - b * b;
            s = (denom > 0.0) ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return distance(p0 + d1 * s, q0 + d2 * t);
}

}  // namespace steiner
