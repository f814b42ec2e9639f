#pragma once

#include <cmath>
#include <random>

namespace kpuf::stats {

/// Robbins-Monro step-size controller for one random-walk proposal site.
/// The step adapts toward the target acceptance rate during warmup and is
/// frozen afterwards.
class AdaptiveStep {
public:
    explicit AdaptiveStep(double initial_step = 0.5, double target = 0.40)
        : log_step_(std::log(initial_step)), target_(target) {}

    double step() const { return std::exp(log_step_); }

    void adapt(double accept_prob) {
        ++t_;
        const double gain = 1.0 / std::pow(static_cast<double>(t_), 0.7);
        log_step_ += gain * (accept_prob - target_);
        if (log_step_ < -15.0)
            log_step_ = -15.0;
        if (log_step_ > 5.0)
            log_step_ = 5.0;
    }

private:
    double log_step_;
    double target_;
    long t_ = 0;
};

/// One random-walk Metropolis update of *value against log_target. Returns
/// the acceptance probability; adapts the step only when warming_up.
template <typename LogTarget, typename Engine>
double rw_update(double* value, double* cached_log_target, LogTarget&& log_target,
                 AdaptiveStep& step, Engine& engine, bool warming_up) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double proposal = *value + step.step() * normal(engine);
    const double lp_new = log_target(proposal);
    const double lp_old = *cached_log_target;
    const double log_alpha = lp_new - lp_old;
    const double alpha = log_alpha >= 0.0 ? 1.0 : std::exp(log_alpha);
    if (unit(engine) < alpha) {
        *value = proposal;
        *cached_log_target = lp_new;
    }
    if (warming_up)
        step.adapt(alpha);
    return alpha;
}

} // namespace kpuf::stats
