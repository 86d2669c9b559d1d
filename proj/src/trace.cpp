#include "trispec/trace.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "trispec/errors.hpp"
#include "trispec/geometry.hpp"
#include "trispec/quadrature.hpp"

namespace tri {

struct BoundaryTrace::Impl {
    int side = 1;
    Fn f, df;
    bool zero = false;
    mutable std::mutex mtx;
    mutable std::map<std::pair<int, double>, std::unique_ptr<TraceSamples>> cache;
};

BoundaryTrace::BoundaryTrace() : BoundaryTrace(zero(1)) {}

BoundaryTrace::BoundaryTrace(int side, Fn value, Fn derivative) : p_(std::make_shared<Impl>()) {
    check_side(side);
    if (!value || !derivative) throw ParameterError("trace needs both value and derivative");
    p_->side = side;
    p_->f = std::move(value);
    p_->df = std::move(derivative);
}

BoundaryTrace BoundaryTrace::zero(int side) {
    BoundaryTrace t(side, [](double) { return 0.0; }, [](double) { return 0.0; });
    t.p_->zero = true;
    return t;
}

BoundaryTrace BoundaryTrace::constant(int side, double c) {
    if (c == 0.0) return zero(side);
    return BoundaryTrace(side, [c](double) { return c; }, [](double) { return 0.0; });
}

int BoundaryTrace::side_index() const { return p_->side; }
double BoundaryTrace::value(double s) const { return p_->f(s); }
double BoundaryTrace::derivative(double s) const { return p_->df(s); }
bool BoundaryTrace::is_zero() const { return p_->zero; }

BoundaryTrace BoundaryTrace::with_side(int j) const {
    if (is_zero()) return zero(j);
    return BoundaryTrace(j, p_->f, p_->df);
}

BoundaryTrace BoundaryTrace::axpy(double a, const BoundaryTrace& other, double b) const {
    if (other.is_zero() || b == 0.0) return scaled(a);
    if (is_zero() || a == 0.0) return other.with_side(side_index()).scaled(b);
    auto f1 = p_->f, d1 = p_->df, f2 = other.p_->f, d2 = other.p_->df;
    return BoundaryTrace(
        side_index(), [=](double s) { return a * f1(s) + b * f2(s); },
        [=](double s) { return a * d1(s) + b * d2(s); });
}

BoundaryTrace BoundaryTrace::scaled(double a) const {
    if (is_zero() || a == 0.0) return zero(side_index());
    if (a == 1.0) return *this;
    auto f = p_->f, d = p_->df;
    return BoundaryTrace(side_index(), [=](double s) { return a * f(s); }, [=](double s) { return a * d(s); });
}

BoundaryTrace BoundaryTrace::reversed() const {
    if (is_zero()) return *this;
    auto f = p_->f, d = p_->df;
    return BoundaryTrace(side_index(), [=](double s) { return f(-s); }, [=](double s) { return -d(-s); });
}

const TraceSamples& BoundaryTrace::samples(int n, double l) const {
    std::lock_guard<std::mutex> lock(p_->mtx);
    auto& slot = p_->cache[{n, l}];
    if (!slot) {
        auto ts = std::make_unique<TraceSamples>();
        QuadratureRule r = side_rule(n, l);
        ts->s = r.nodes;
        ts->w = r.weights;
        ts->v.resize(n);
        ts->dv.resize(n);
        for (int i = 0; i < n; ++i) {
            ts->v[i] = p_->zero ? 0.0 : p_->f(r.nodes[i]);
            ts->dv[i] = p_->zero ? 0.0 : p_->df(r.nodes[i]);
        }
        slot = std::move(ts);
    }
    return *slot;
}

}  // namespace tri
