#include "trispec/spline.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <fstream>
#include <sstream>

#include "trispec/errors.hpp"

namespace tri {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    if (n != y_.size()) throw ParameterError("spline needs as many values as knots");
    if (n < 2) throw ParameterError("spline needs at least two knots");
    for (size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) throw ParameterError("spline knots must be strictly increasing");
    m_.assign(n, 0.0);
    if (n == 2) return;
    std::vector<double> h(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];
    using T = Eigen::Triplet<double>;
    std::vector<T> trip;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (size_t i = 1; i + 1 < n; ++i) {
        trip.emplace_back(i, i - 1, h[i - 1]);
        trip.emplace_back(i, i, 2.0 * (h[i - 1] + h[i]));
        trip.emplace_back(i, i + 1, h[i]);
        rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
    }
    if (n == 3) {
        trip.emplace_back(0, 0, 1.0);
        trip.emplace_back(n - 1, n - 1, 1.0);
    } else {
        // third derivative continuous across the second and the second-to-last knots
        trip.emplace_back(0, 0, -h[1]);
        trip.emplace_back(0, 1, h[0] + h[1]);
        trip.emplace_back(0, 2, -h[0]);
        const size_t a = n - 3;
        trip.emplace_back(n - 1, a, -h[a + 1]);
        trip.emplace_back(n - 1, a + 1, h[a] + h[a + 1]);
        trip.emplace_back(n - 1, a + 2, -h[a]);
    }
    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) throw NumericalError("spline system is singular");
    Eigen::VectorXd m = lu.solve(rhs);
    for (size_t i = 0; i < n; ++i) m_[i] = m[i];
}

size_t CubicSpline::interval(double t) const {
    if (x_.empty()) throw ParameterError("empty spline");
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    size_t i = it == x_.begin() ? 0 : static_cast<size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
}

double CubicSpline::value(double t) const {
    const size_t i = interval(t);
    const double h = x_[i + 1] - x_[i], u = t - x_[i];
    const double b = (y_[i + 1] - y_[i]) / h - h * (2.0 * m_[i] + m_[i + 1]) / 6.0;
    return y_[i] + u * (b + u * (0.5 * m_[i] + u * (m_[i + 1] - m_[i]) / (6.0 * h)));
}

double CubicSpline::derivative(double t) const {
    const size_t i = interval(t);
    const double h = x_[i + 1] - x_[i], u = t - x_[i];
    const double b = (y_[i + 1] - y_[i]) / h - h * (2.0 * m_[i] + m_[i + 1]) / 6.0;
    return b + u * (m_[i] + u * (m_[i + 1] - m_[i]) / (2.0 * h));
}

double CubicSpline::second_derivative(double t) const {
    const size_t i = interval(t);
    const double h = x_[i + 1] - x_[i], u = t - x_[i];
    return m_[i] + u * (m_[i + 1] - m_[i]) / h;
}

BoundaryTrace spline_trace(int side, const CubicSpline& sp) {
    return BoundaryTrace(
        side, [sp](double s) { return sp.value(s); }, [sp](double s) { return sp.derivative(s); });
}

CubicSpline read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sample file '" + path + "'");
    std::vector<double> xs, ys;
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (auto c = line.find('#'); c != std::string::npos) line.erase(c);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a)) continue;  // blank line
        std::string extra;
        if (!(ls >> b) || (ls >> extra))
            throw ConfigError(path + ":" + std::to_string(ln) + ": expected two numbers");
        if (!xs.empty() && !(a > xs.back()))
            throw ConfigError(path + ":" + std::to_string(ln) + ": s values must increase");
        xs.push_back(a);
        ys.push_back(b);
    }
    if (xs.size() < 4) throw ConfigError(path + ": need at least 4 samples");
    return CubicSpline(std::move(xs), std::move(ys));
}

}  // namespace tri
