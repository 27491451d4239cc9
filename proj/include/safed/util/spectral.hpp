#pragma once
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace safed {

// Direct-summation DFT power spectrum of a real signal. Signals here are a
// few hundred samples at most, so O(n^2) is cheaper than pulling in an FFT.
// Returns power at bins k = 0..n/2; bin k corresponds to k*rate_hz/n.
inline std::vector<double> power_spectrum(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<double> power(n / 2 + 1, 0.0);
    if (n == 0) return power;
    const double w = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < power.size(); ++k) {
        double re = 0.0, im = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = w * static_cast<double>(k) * static_cast<double>(i);
            re += x[i] * std::cos(a);
            im -= x[i] * std::sin(a);
        }
        power[k] = re * re + im * im;
    }
    return power;
}

inline double bin_frequency_hz(std::size_t bin, std::size_t n, double rate_hz) {
    return static_cast<double>(bin) * rate_hz / static_cast<double>(n);
}

// Frequency of the strongest non-DC bin.
inline double dominant_frequency_hz(std::span<const double> x, double rate_hz) {
    const auto power = power_spectrum(x);
    std::size_t best = 0;
    double best_power = -1.0;
    for (std::size_t k = 1; k < power.size(); ++k) {
        if (power[k] > best_power) {
            best_power = power[k];
            best = k;
        }
    }
    return bin_frequency_hz(best, x.size(), rate_hz);
}

// Total spectral power over [lo_hz, hi_hz], DC excluded.
inline double band_power(std::span<const double> x, double rate_hz, double lo_hz, double hi_hz) {
    const auto power = power_spectrum(x);
    double total = 0.0;
    for (std::size_t k = 1; k < power.size(); ++k) {
        const double f = bin_frequency_hz(k, x.size(), rate_hz);
        if (f >= lo_hz && f <= hi_hz) total += power[k];
    }
    return total;
}

} // namespace safed
