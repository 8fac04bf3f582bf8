// Neumaier-compensated accumulation for real and complex sums.
#pragma once

#ifdef __FAST_MATH__
#error "-ffast-math would cancel the compensation terms"
#endif

#include <cmath>
#include <complex>

namespace sqfap {

class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }
    void merge(const CompensatedSum& other) noexcept {
        add(other.sum_);
        add(other.carry_);
    }
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

class CompensatedComplex {
public:
    void add(std::complex<double> z) noexcept {
        re_.add(z.real());
        im_.add(z.imag());
    }
    void add_scaled(std::complex<double> z, double w) noexcept {
        re_.add(w * z.real());
        im_.add(w * z.imag());
    }
    CompensatedComplex& operator+=(std::complex<double> z) noexcept {
        add(z);
        return *this;
    }
    void merge(const CompensatedComplex& other) noexcept {
        re_.merge(other.re_);
        im_.merge(other.im_);
    }
    std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

}  // namespace sqfap
