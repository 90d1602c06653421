#ifndef TESTS_SUPPORT_GAMMA_REF_HPP
#define TESTS_SUPPORT_GAMMA_REF_HPP

// Reference factors for the functional-equation cross-check, kept out of the
// library on purpose: the library never needs Gamma, and the tests should
// not exercise the code under test to validate itself.

#include <cmath>
#include <complex>
#include <numbers>

namespace testsupport {

/// log sin(w) stable for large |Im w|, where sin overflows double range.
inline std::complex<double> log_sin_ref(std::complex<double> w) {
    const std::complex<double> i(0.0, 1.0);
    const double ln2 = std::numbers::ln2;
    const double pi = std::numbers::pi;
    if (w.imag() < 0.0) {
        // sin w = e^{iw} (1 - e^{-2iw}) / (2i), with |e^{iw}| dominant
        return i * w - std::complex<double>(ln2, pi / 2.0) +
               std::log(1.0 - std::exp(-2.0 * i * w));
    }
    // sin w = e^{-iw} (1 - e^{2iw}) * i / 2, with |e^{-iw}| dominant
    return -i * w + std::complex<double>(-ln2, pi / 2.0) +
           std::log(1.0 - std::exp(2.0 * i * w));
}

inline std::complex<double> lgamma_ref(std::complex<double> z) {
    // Lanczos approximation (g = 7, 9 terms), right half-plane; the
    // reflection below never recurses twice.
    constexpr double kCoef[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    const double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        // log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z); any
        // 2 pi i branch offset is irrelevant because callers exponentiate.
        return std::log(pi) - log_sin_ref(pi * z) - lgamma_ref(1.0 - z);
    }
    z -= 1.0;
    std::complex<double> x = kCoef[0];
    for (int i = 1; i < 9; ++i) x += kCoef[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + 7.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

/// log of chi(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s), the reflection
/// factor with zeta(s) = chi(s) zeta(1-s).
inline std::complex<double> log_chi_ref(std::complex<double> s) {
    const double pi = std::numbers::pi;
    return s * std::numbers::ln2 + (s - 1.0) * std::log(pi) + log_sin_ref(pi * s / 2.0) +
           lgamma_ref(1.0 - s);
}

}  // namespace testsupport

#endif
