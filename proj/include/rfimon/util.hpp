#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace rfimon {

inline double db_to_lin(double db) {
    if (std::isinf(db) && db < 0) return 0.0;
    return std::pow(10.0, db / 10.0);
}

inline double lin_to_db(double lin) {
    if (lin <= 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(lin);
}

/// Evaluate a polynomial with ascending-degree coefficients.
inline double polyval(std::span<const double> coeffs, double x) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

/// Symmetric 2x2 matrix, stored as (xx, xy, yy).
struct Sym2 {
    double xx = 1.0;
    double xy = 0.0;
    double yy = 1.0;

    double det() const { return xx * yy - xy * xy; }
    bool positive_definite() const { return xx > 0.0 && det() > 0.0; }

    Sym2 scaled(double s) const { return {xx * s, xy * s, yy * s}; }

    Vec2 solve(Vec2 v) const {
        const double d = det();
        return {(yy * v.x - xy * v.y) / d, (xx * v.y - xy * v.x) / d};
    }

    /// Lower-triangular Cholesky factor L with L L^T = this.
    /// Returns (l00, l10, l11).
    void cholesky(double& l00, double& l10, double& l11) const {
        l00 = std::sqrt(xx);
        l10 = xy / l00;
        l11 = std::sqrt(yy - l10 * l10);
    }

    double mahalanobis2(Vec2 mean, Vec2 p) const {
        const Vec2 d = p - mean;
        const Vec2 s = solve(d);
        return d.dot(s);
    }
};

/// Gaussian pdf in two dimensions.
inline double gauss2_pdf(Vec2 mean, const Sym2& cov, Vec2 p) {
    const double m2 = cov.mahalanobis2(mean, p);
    return std::exp(-0.5 * m2) / (2.0 * M_PI * std::sqrt(cov.det()));
}

/// Adaptive Simpson quadrature.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 40);

/// Deterministic 64-bit generator with a Box-Muller normal source.
/// Kept self-contained so results are identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double uniform() {  // (0, 1)
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// FNV-1a 64-bit hash, hex-encoded. Used to bind derived files to their inputs.
std::string fnv1a_hex(const std::string& data);

/// Percentage rounded half-up to one decimal (display convention for reports).
inline double round_pct_1dp(double ratio) {
    return std::floor(ratio * 1000.0 + 0.5) / 10.0;
}

}  // namespace rfimon
