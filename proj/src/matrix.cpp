#include "mateq/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mateq/error.hpp"

namespace mateq {

Matrix::Matrix(std::size_t rows, std::size_t cols) : Matrix(rows, cols, std::vector<double>(rows * cols, 0.0)) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) throw InvalidParameter("matrix dimensions must be positive");
    if (data_.size() != rows * cols) {
        throw InvalidParameter("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                               std::to_string(rows * cols));
    }
    if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); })) {
        throw InvalidParameter("matrix entries must be finite");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool Matrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

Matrix& Matrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (!same_shape(other)) throw InvalidParameter("matrix shapes differ");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (!same_shape(other)) throw InvalidParameter("matrix shapes differ");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

Matrix operator*(double s, Matrix m) { return m *= s; }
Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }

double max_abs_diff(const Matrix& lhs, const Matrix& rhs) {
    if (!lhs.same_shape(rhs)) throw InvalidParameter("matrix shapes differ");
    double worst = 0.0;
    for (std::size_t k = 0; k < lhs.size(); ++k) {
        worst = std::max(worst, std::abs(lhs.data()[k] - rhs.data()[k]));
    }
    return worst;
}

double trace(const Matrix& m) {
    double t = 0.0;
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
    return t;
}

double norm_one(const Matrix& x) {
    double best = 0.0;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i) col += std::abs(x(i, j));
        best = std::max(best, col);
    }
    return best;
}

double norm_infinity(const Matrix& x) {
    double best = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < x.cols(); ++j) row += std::abs(x(i, j));
        best = std::max(best, row);
    }
    return best;
}

double norm_frobenius(const Matrix& x) {
    // Scaled accumulation so that huge or tiny entries do not over/underflow.
    double scale = 0.0;
    double ssq = 1.0;
    for (double v : x.data()) {
        if (v == 0.0) continue;
        const double av = std::abs(v);
        if (scale < av) {
            ssq = 1.0 + ssq * (scale / av) * (scale / av);
            scale = av;
        } else {
            ssq += (av / scale) * (av / scale);
        }
    }
    return scale * std::sqrt(ssq);
}

namespace {

// v <- X^T X v for v of length cols.
void gram_apply(const Matrix& x, std::span<const double> v, std::span<double> tmp, std::span<double> out) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < x.cols(); ++j) acc += x(i, j) * v[j];
        tmp[i] = acc;
    }
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) out[j] += x(i, j) * tmp[i];
    }
}

double euclid(std::span<const double> v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return std::sqrt(s);
}

}  // namespace

double norm_two(const Matrix& x_in) {
    constexpr int kMaxIterations = 10000;
    constexpr int kMaxRestarts = 8;
    constexpr double kRelTol = 1e-12;

    // Power iteration is scale invariant; normalise first to keep X^T X finite.
    const double scale = norm_frobenius(x_in);
    if (scale == 0.0) return 0.0;
    Matrix x = (1.0 / scale) * x_in;

    const std::size_t n = x.cols();
    std::vector<double> v(n);
    std::vector<double> w(n);
    std::vector<double> tmp(x.rows());

    // Fixed seed keeps the function deterministic and thread-safe.
    std::mt19937_64 rng(0x5eed'2024ULL);
    std::uniform_real_distribution<double> dist(0.5, 1.5);

    for (int restart = 0; restart < kMaxRestarts; ++restart) {
        for (double& e : v) e = dist(rng) * (rng() % 2 ? -1.0 : 1.0);
        const double nv = euclid(v);
        for (double& e : v) e /= nv;

        double lambda = 0.0;
        bool stagnated = false;
        for (int it = 0; it < kMaxIterations; ++it) {
            gram_apply(x, v, tmp, w);
            // Rayleigh quotient v^T (X^T X) v with |v| = 1.
            double rq = 0.0;
            for (std::size_t j = 0; j < n; ++j) rq += v[j] * w[j];
            const double nw = euclid(w);
            if (nw == 0.0) {
                stagnated = true;
                break;
            }
            for (std::size_t j = 0; j < n; ++j) v[j] = w[j] / nw;
            if (it > 0 && std::abs(rq - lambda) <= kRelTol * rq) return scale * std::sqrt(rq);
            lambda = rq;
        }
        if (!stagnated) throw ConvergenceError("norm_two: power iteration did not converge");
    }
    throw ConvergenceError("norm_two: power iteration stuck in the null space");
}

Norm::Norm(Kind kind) : kind_(kind) {
    if (kind == Kind::Custom) throw InvalidParameter("use Norm::custom to register a custom norm");
}

Norm Norm::custom(Function fn, std::size_t check_rows, std::size_t check_cols) {
    if (!fn) throw InvalidParameter("custom norm function is empty");
    std::mt19937_64 rng(0xc0ffeeULL);
    std::uniform_real_distribution<double> entry(-2.0, 2.0);
    std::uniform_real_distribution<double> lambda_dist(-10.0, 10.0);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<double> data(check_rows * check_cols);
        for (double& d : data) d = entry(rng);
        const Matrix x(check_rows, check_cols, std::move(data));
        const double lambda = lambda_dist(rng);
        const double lhs = fn(lambda * x);
        const double rhs = std::abs(lambda) * fn(x);
        if (!(lhs >= 0.0) || std::abs(lhs - rhs) > 1e-9 * std::max(std::abs(rhs), 1e-300)) {
            throw InvalidParameter("custom norm is not absolutely homogeneous");
        }
    }
    Norm n;
    n.kind_ = Kind::Custom;
    n.fn_ = std::move(fn);
    return n;
}

std::string_view Norm::name() const noexcept {
    switch (kind_) {
        case Kind::One: return "one";
        case Kind::Two: return "two";
        case Kind::Infinity: return "inf";
        case Kind::Frobenius: return "frobenius";
        case Kind::Custom: return "custom";
    }
    return "unknown";
}

double Norm::operator()(const Matrix& x) const {
    switch (kind_) {
        case Kind::One: return norm_one(x);
        case Kind::Two: return norm_two(x);
        case Kind::Infinity: return norm_infinity(x);
        case Kind::Frobenius: return norm_frobenius(x);
        case Kind::Custom: return fn_(x);
    }
    throw InternalError("unknown norm kind");
}

Norm parse_norm(std::string_view name) {
    if (name == "one" || name == "1") return Norm::Kind::One;
    if (name == "two" || name == "2") return Norm::Kind::Two;
    if (name == "inf" || name == "infinity") return Norm::Kind::Infinity;
    if (name == "frobenius" || name == "fro" || name == "f") return Norm::Kind::Frobenius;
    throw InvalidParameter("unknown norm '" + std::string(name) + "'");
}

}  // namespace mateq
