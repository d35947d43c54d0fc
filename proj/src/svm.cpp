#include "pedant/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pedant/errors.hpp"

namespace pedant {

namespace {
constexpr double kTau = 1e-12;
}

double gamma_scale(const std::vector<double>& x) {
    if (x.empty()) return 1.0;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size());
    if (var <= 0.0) return 1.0;
    return 1.0 / var;
}

double ScalarSvm::kernel(double a, double b) const {
    if (params_.kernel == KernelKind::LINEAR) return a * b;
    const double d = a - b;
    return std::exp(-params_.gamma * d * d);
}

ScalarSvm ScalarSvm::train(const std::vector<double>& x, const std::vector<int>& y,
                           const SvmParams& params) {
    if (x.size() != y.size() || x.empty()) {
        throw PreconditionError("svm: features and labels must be non-empty and equal-sized");
    }
    if (!(params.C > 0.0)) throw ConfigError("svm: C must be > 0");
    bool has_pos = false;
    bool has_neg = false;
    for (int label : y) {
        if (label == 1) {
            has_pos = true;
        } else if (label == -1) {
            has_neg = true;
        } else {
            throw PreconditionError("svm: labels must be +1 or -1");
        }
    }
    if (!has_pos || !has_neg) {
        throw DataError("svm: training data must contain both classes");
    }

    ScalarSvm model;
    model.params_ = params;

    const std::size_t n = x.size();
    const double C = params.C;

    // Q[i][j] = y_i y_j K(x_i, x_j); QD is the kernel diagonal.
    std::vector<std::vector<double>> Q(n, std::vector<double>(n));
    std::vector<double> QD(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double q = y[i] * y[j] * model.kernel(x[i], x[j]);
            Q[i][j] = q;
            Q[j][i] = q;
        }
        QD[i] = model.kernel(x[i], x[i]);
    }

    std::vector<double> alpha(n, 0.0);
    std::vector<double> G(n, -1.0); // gradient of the dual objective

    auto in_up = [&](std::size_t t) {
        return (y[t] == 1 && alpha[t] < C) || (y[t] == -1 && alpha[t] > 0.0);
    };
    auto in_low = [&](std::size_t t) {
        return (y[t] == 1 && alpha[t] > 0.0) || (y[t] == -1 && alpha[t] < C);
    };

    for (std::size_t iter = 0; iter < params.max_iter; ++iter) {
        // Second-order working-set selection, as in standard SMO solvers.
        double gmax = -std::numeric_limits<double>::infinity();
        double gmin = std::numeric_limits<double>::infinity();
        std::ptrdiff_t i = -1;
        for (std::size_t t = 0; t < n; ++t) {
            if (in_up(t) && -y[t] * G[t] > gmax) {
                gmax = -y[t] * G[t];
                i = static_cast<std::ptrdiff_t>(t);
            }
        }
        std::ptrdiff_t j = -1;
        double best_obj = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            if (!in_low(t)) continue;
            const double neg_yg = -y[t] * G[t];
            gmin = std::min(gmin, neg_yg);
            if (i < 0) continue;
            const double grad_diff = gmax + y[t] * G[t];
            if (grad_diff <= 0.0) continue;
            double quad =
                QD[static_cast<std::size_t>(i)] + QD[t] -
                2.0 * y[static_cast<std::size_t>(i)] * y[t] *
                    Q[static_cast<std::size_t>(i)][t];
            if (quad <= 0.0) quad = kTau;
            const double obj = -(grad_diff * grad_diff) / quad;
            if (obj < best_obj) {
                best_obj = obj;
                j = static_cast<std::ptrdiff_t>(t);
            }
        }
        if (i < 0 || j < 0 || gmax - gmin < params.eps) break;

        const std::size_t ii = static_cast<std::size_t>(i);
        const std::size_t jj = static_cast<std::size_t>(j);
        const double old_ai = alpha[ii];
        const double old_aj = alpha[jj];

        if (y[ii] != y[jj]) {
            double quad = QD[ii] + QD[jj] + 2.0 * Q[ii][jj];
            if (quad <= 0.0) quad = kTau;
            const double delta = (-G[ii] - G[jj]) / quad;
            const double diff = alpha[ii] - alpha[jj];
            alpha[ii] += delta;
            alpha[jj] += delta;
            if (diff > 0.0) {
                if (alpha[jj] < 0.0) {
                    alpha[jj] = 0.0;
                    alpha[ii] = diff;
                }
            } else {
                if (alpha[ii] < 0.0) {
                    alpha[ii] = 0.0;
                    alpha[jj] = -diff;
                }
            }
            if (diff > 0.0) {
                if (alpha[ii] > C) {
                    alpha[ii] = C;
                    alpha[jj] = C - diff;
                }
            } else {
                if (alpha[jj] > C) {
                    alpha[jj] = C;
                    alpha[ii] = C + diff;
                }
            }
        } else {
            double quad = QD[ii] + QD[jj] - 2.0 * Q[ii][jj];
            if (quad <= 0.0) quad = kTau;
            const double delta = (G[ii] - G[jj]) / quad;
            const double sum = alpha[ii] + alpha[jj];
            alpha[ii] -= delta;
            alpha[jj] += delta;
            if (sum > C) {
                if (alpha[ii] > C) {
                    alpha[ii] = C;
                    alpha[jj] = sum - C;
                }
            } else {
                if (alpha[jj] < 0.0) {
                    alpha[jj] = 0.0;
                    alpha[ii] = sum;
                }
            }
            if (sum > C) {
                if (alpha[jj] > C) {
                    alpha[jj] = C;
                    alpha[ii] = sum - C;
                }
            } else {
                if (alpha[ii] < 0.0) {
                    alpha[ii] = 0.0;
                    alpha[jj] = sum;
                }
            }
        }

        const double dai = alpha[ii] - old_ai;
        const double daj = alpha[jj] - old_aj;
        for (std::size_t t = 0; t < n; ++t) {
            G[t] += Q[ii][t] * dai + Q[jj][t] * daj;
        }
    }

    // Offset: mean over free support vectors, midpoint of the bounds when
    // none are free.
    double upper = std::numeric_limits<double>::infinity();
    double lower = -std::numeric_limits<double>::infinity();
    double sum_free = 0.0;
    std::size_t n_free = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = y[t] * G[t];
        if (alpha[t] >= C) {
            if (y[t] == -1) {
                upper = std::min(upper, yg);
            } else {
                lower = std::max(lower, yg);
            }
        } else if (alpha[t] <= 0.0) {
            if (y[t] == 1) {
                upper = std::min(upper, yg);
            } else {
                lower = std::max(lower, yg);
            }
        } else {
            ++n_free;
            sum_free += yg;
        }
    }
    model.rho_ = n_free > 0 ? sum_free / static_cast<double>(n_free) : (upper + lower) / 2.0;

    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 0.0) {
            model.sv_x_.push_back(x[t]);
            model.sv_coef_.push_back(alpha[t] * y[t]);
        }
    }
    return model;
}

double ScalarSvm::decision_value(double x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < sv_x_.size(); ++i) {
        acc += sv_coef_[i] * kernel(sv_x_[i], x);
    }
    return acc - rho_;
}

} // namespace pedant
