#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace tri {

struct TraceSamples {
    std::vector<double> s, w, v, dv;
};

// Real function of arclength on one side together with its exact derivative.
class BoundaryTrace {
public:
    using Fn = std::function<double(double)>;

    BoundaryTrace();
    BoundaryTrace(int side, Fn value, Fn derivative);

    static BoundaryTrace zero(int side);
    static BoundaryTrace constant(int side, double c);

    int side_index() const;
    double value(double s) const;
    double derivative(double s) const;
    bool is_zero() const;

    BoundaryTrace with_side(int j) const;
    // a*this + b*other, on this trace's side
    BoundaryTrace axpy(double a, const BoundaryTrace& other, double b) const;
    BoundaryTrace scaled(double a) const;
    // s -> this(-s)
    BoundaryTrace reversed() const;

    // values and derivatives at the n-point Gauss nodes of [-l/2, l/2], cached
    const TraceSamples& samples(int n, double l) const;

private:
    struct Impl;
    std::shared_ptr<Impl> p_;
};

}  // namespace tri
