#pragma once

#include <string>
#include <vector>

#include "trispec/trace.hpp"

namespace tri {

// Cubic interpolating spline with not-a-knot ends (natural ends for 3 points, linear for 2).
// Evaluation outside [x.front(), x.back()] continues the end polynomials.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double t) const { return value(t); }
    double value(double t) const;
    double derivative(double t) const;
    double second_derivative(double t) const;

    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& y() const { return y_; }

private:
    size_t interval(double t) const;
    std::vector<double> x_, y_, m_;  // m_: second derivatives at the knots
};

BoundaryTrace spline_trace(int side, const CubicSpline& sp);

// Two columns "s value" per line, separated by whitespace or a comma; '#' starts a comment.
// s must be strictly increasing.  Throws ConfigError with the line number on bad input.
CubicSpline read_sample_file(const std::string& path);

}  // namespace tri
