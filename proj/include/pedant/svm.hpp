#pragma once

#include <cstddef>
#include <vector>

namespace pedant {

enum class KernelKind { RBF, LINEAR };

struct SvmParams {
    double C = 1.0;
    KernelKind kernel = KernelKind::RBF;
    double gamma = 1.0; // RBF width
    double eps = 1e-3;  // KKT stopping tolerance
    std::size_t max_iter = 10'000'000;
};

// Soft-margin C-SVC on scalar features, solved by SMO with second-order
// working-set selection. One-dimensional inputs keep the kernel matrix tiny,
// so the full matrix is cached up front.
class ScalarSvm {
public:
    // y entries must be +1 or -1 and both classes must be present.
    static ScalarSvm train(const std::vector<double>& x, const std::vector<int>& y,
                           const SvmParams& params);

    double decision_value(double x) const;
    int predict(double x) const { return decision_value(x) > 0.0 ? +1 : -1; }
    std::size_t support_vector_count() const { return sv_x_.size(); }

private:
    double kernel(double a, double b) const;

    std::vector<double> sv_x_;
    std::vector<double> sv_coef_; // alpha_i * y_i
    double rho_ = 0.0;
    SvmParams params_{};
};

// The "scale" gamma convention: 1 / (n_features * Var(x)) with one feature;
// zero-variance input falls back to 1.
double gamma_scale(const std::vector<double>& x);

} // namespace pedant
