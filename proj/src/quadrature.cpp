#include "densgeo/quadrature.hpp"

#include <array>
#include <cmath>

#include "densgeo/errors.hpp"

namespace densgeo {

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr std::array<double, 8> kNodes = {
    0.0000000000000000e+00, 2.0119409399743451e-01, 3.9415134707756339e-01,
    5.7097217260853883e-01, 7.2441773136017007e-01, 8.4820658341042721e-01,
    9.3727339240070595e-01, 9.8799251802048538e-01};
constexpr std::array<double, 8> kWeights = {
    2.0257824192556090e-01, 1.9843148532711125e-01, 1.8616100001556188e-01,
    1.6626920581699378e-01, 1.3957067792615391e-01, 1.0715922046717177e-01,
    7.0366047488108069e-02, 3.0753241996118647e-02};

double gauss15(const ScalarFn& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = kWeights[0] * f(mid);
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kNodes[i];
        sum += kWeights[i] * (f(mid + dx) + f(mid - dx));
    }
    return sum * half;
}

double composite(const ScalarFn& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        sum += gauss15(f, a + i * h, a + (i + 1) * h);
    }
    return sum;
}

}  // namespace

double integrate_smooth(const ScalarFn& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    int panels = static_cast<int>(std::fmin(64.0, std::fmax(2.0, std::ceil(std::abs(b - a) / 0.5))));
    double prev = composite(f, a, b, panels);
    for (int round = 0; round < 12; ++round) {
        panels *= 2;
        const double cur = composite(f, a, b, panels);
        if (std::abs(cur - prev) <= tol * std::fmax(1.0, std::abs(cur))) {
            return cur;
        }
        prev = cur;
    }
    throw QuadratureError("quadrature did not converge to tol", prev);
}

namespace {

ImproperResult improper_dyadic(const ScalarFn& f, double tol, int max_subdiv,
                               bool toward_zero, bool accept_geometric_decay) {
    ImproperResult res;
    double total = 0.0;
    double prev_piece = -1.0;
    int decaying = 0;
    for (int k = 0; k < max_subdiv; ++k) {
        const double lo = toward_zero ? std::ldexp(1.0, -(k + 1)) : std::ldexp(1.0, k);
        const double hi = toward_zero ? std::ldexp(1.0, -k) : std::ldexp(1.0, k + 1);
        double piece;
        try {
            piece = integrate_smooth(f, lo, hi, tol);
        } catch (const QuadratureError& e) {
            piece = e.partial;
        }
        res.subdivisions = k + 1;
        if (!std::isfinite(piece)) {
            // Overflowing integrand on a tail piece: divergent power behaviour.
            res.finite = false;
            return res;
        }
        total += piece;
        const double q = prev_piece > 0.0 && piece > 0.0 ? piece / prev_piece : -1.0;
        if (std::abs(piece) < tol) {
            res.finite = true;
            res.value = total;
            // Geometric tail estimate when the decay ratio is clean.
            if (q > 0.0 && q < 0.95) res.value += piece * q / (1.0 - q);
            return res;
        }
        decaying = (q >= 0.0 && q <= 0.98) ? decaying + 1 : 0;
        if (accept_geometric_decay && k >= 16 && decaying >= 6) {
            res.finite = true;
            res.value = total + (q < 1.0 ? piece * q / (1.0 - q) : 0.0);
            return res;
        }
        prev_piece = piece;
    }
    res.finite = false;  // Cauchy criterion failed within the budget
    return res;
}

}  // namespace

ImproperResult improper_to_infinity(const ScalarFn& f, double tol, int max_subdiv,
                                    bool accept_geometric_decay) {
    return improper_dyadic(f, tol, max_subdiv, false, accept_geometric_decay);
}

ImproperResult improper_to_zero(const ScalarFn& f, double tol, int max_subdiv,
                                bool accept_geometric_decay) {
    return improper_dyadic(f, tol, max_subdiv, true, accept_geometric_decay);
}

double integrate_radial(const ScalarFn& f, double r, double tol) {
    if (!(r > 0.0)) throw DomainError("radial integral needs r > 0");
    if (r == 1.0) return 0.0;
    const double u_end = std::log(r);
    const auto g = [&f](double u) {
        const double rho = std::exp(u);
        return f(rho) * rho;
    };
    return integrate_smooth(g, 0.0, u_end, tol);
}

}  // namespace densgeo
