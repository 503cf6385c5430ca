#pragma once

#include <cmath>

#include "skewdyn/algebra.hpp"

// Complex numbers carried as complex logarithms (log|x| + i arg x), so orbits
// that tend to 0 or infinity superexponentially stay representable. Zero is
// the value with real part -inf.
namespace skewdyn::logspace {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline bool is_zero(Complex l) { return l.real() == -HUGE_VAL; }

inline Complex log_of(Complex x) {
    if (x == Complex(0.0, 0.0)) return {-HUGE_VAL, 0.0};
    return std::log(x);
}

inline Complex exp_of(Complex l) {
    if (is_zero(l)) return {0.0, 0.0};
    return std::exp(l);
}

// k * l with the convention 0 * log(0) = 0, i.e. x^0 = 1 even for x = 0.
inline Complex scale(double k, Complex l) {
    if (k == 0.0) return {0.0, 0.0};
    if (is_zero(l)) return {k > 0 ? -HUGE_VAL : HUGE_VAL, 0.0};
    return {k * l.real(), k * l.imag()};
}

inline Complex reduce_arg(Complex l) { return {l.real(), std::remainder(l.imag(), kTwoPi)}; }

// Streaming log-sum-exp over complex logarithms.
class Accumulator {
public:
    void add(Complex l) {
        if (is_zero(l)) return;
        if (std::isnan(l.real()) || l.real() == HUGE_VAL) {
            poisoned_ = true;
            return;
        }
        const Complex unit(std::cos(l.imag()), std::sin(l.imag()));
        if (l.real() > max_) {
            sum_ = sum_ * std::exp(max_ - l.real()) + unit;
            max_ = l.real();
        } else {
            sum_ += unit * std::exp(l.real() - max_);
        }
    }
    // log of the accumulated sum; NaN when an infinite term was added.
    Complex result() const {
        if (poisoned_) return {NAN, NAN};
        if (max_ == -HUGE_VAL || sum_ == Complex(0.0, 0.0)) return {-HUGE_VAL, 0.0};
        return {max_ + std::log(std::abs(sum_)), std::arg(sum_)};
    }

private:
    double max_ = -HUGE_VAL;
    Complex sum_{0.0, 0.0};
    bool poisoned_ = false;
};

}  // namespace skewdyn::logspace
