#ifndef BIWAVE_SUMMATION_HPP
#define BIWAVE_SUMMATION_HPP

#include <cmath>
#include <complex>

namespace biwave {

/// Neumaier compensated accumulator: tracks the low-order bits lost when
/// adding terms of mixed magnitude, so long alternating series keep close
/// to working precision.
template <typename T>
class NeumaierSum {
public:
    void add(T x) {
        T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

template <>
class NeumaierSum<std::complex<double>> {
public:
    void add(std::complex<double> x) {
        re_.add(x.real());
        im_.add(x.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    NeumaierSum<double> re_;
    NeumaierSum<double> im_;
};

} // namespace biwave

#endif
