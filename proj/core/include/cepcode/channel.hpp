#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "cepcode/gram.hpp"
#include "cepcode/rng.hpp"

namespace cep {

class Rng;

enum class SnrConvention {
  Exact,       // received SNR N / ((N + P - 1) sigma^2)
  Asymptotic,  // long-block convention 1 / sigma^2
};

// One Rayleigh channel realization. Tap vectors are CN(0, 1/P) per entry and
// stay constant for coherencePeriod samples at a time.
struct ChannelDraw {
  int p = 0;
  int coherencePeriod = 0;               // in samples
  std::vector<Eigen::VectorXcd> taps;    // one P-vector per coherence block

  // Taps acting on 1-based received sample t.
  const Eigen::VectorXcd& tapsAt(int sample) const;
};

// Taps for a burst of `length` received samples. coherencePeriod <= 0 means
// quasi-static (a single tap vector for the whole burst).
ChannelDraw drawChannel(int p, int length, int coherencePeriod, Rng& rng);

// Real convolution matrix of the bit vector. Quasi-static: L x P banded
// Toeplitz, L = N + P - 1. With a sub-block period q: block-diagonal MQ x MP
// where each Q x P block convolves only the bits seen by that sub-block.
Eigen::MatrixXd convMatrix(std::span<const int> bits, int p,
                           std::optional<int> q = std::nullopt);

// Noiseless received burst, y_t = sum_j b_{t-j} h_{j+1}(t), length N + P - 1.
Eigen::VectorXcd transmitClean(std::span<const int> bits, const ChannelDraw& ch);

// transmitClean plus CN(0, sigma2) noise per sample drawn from rng.
Eigen::VectorXcd transmit(std::span<const int> bits, const ChannelDraw& ch,
                          double sigma2, Rng& rng);

// Least-squares tap estimate (B^T B)^{-1} B^T y. Throws std::runtime_error
// if B^T B is singular.
Eigen::VectorXcd lsEstimate(const Eigen::MatrixXd& b, const Eigen::VectorXcd& y);

// Noise variance realizing snrDb under the given convention.
double noiseVariance(int n, int p, double snrDb, SnrConvention conv);

// Inverse of noiseVariance: average SNR in dB for a given sigma^2.
double averageSnrDb(int n, int p, double sigma2, SnrConvention conv);

}  // namespace cep
