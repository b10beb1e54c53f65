#include "cepcode/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cep {

const Eigen::VectorXcd& ChannelDraw::tapsAt(int sample) const {
  int block = (sample + coherencePeriod - 1) / coherencePeriod;
  return taps.at(static_cast<std::size_t>(block - 1));
}

ChannelDraw drawChannel(int p, int length, int coherencePeriod, Rng& rng) {
  if (p < 1 || length < 1) throw std::invalid_argument("drawChannel: bad (P, length)");
  ChannelDraw ch;
  ch.p = p;
  ch.coherencePeriod = coherencePeriod > 0 ? coherencePeriod : length;
  const int blocks = (length + ch.coherencePeriod - 1) / ch.coherencePeriod;
  ch.taps.reserve(static_cast<std::size_t>(blocks));
  for (int k = 0; k < blocks; ++k) {
    Eigen::VectorXcd h(p);
    for (int j = 0; j < p; ++j) h(j) = rng.complexGaussian(1.0 / p);
    ch.taps.push_back(std::move(h));
  }
  return ch;
}

Eigen::MatrixXd convMatrix(std::span<const int> bits, int p,
                           std::optional<int> q) {
  const int n = static_cast<int>(bits.size());
  auto bitAt = [&](int t) { return (t >= 1 && t <= n) ? bits[t - 1] : 0; };
  if (!q) {
    const int l = n + p - 1;
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(l, p);
    for (int r = 1; r <= l; ++r) {
      for (int j = 0; j < p; ++j) b(r - 1, j) = bitAt(r - j);
    }
    return b;
  }
  BlockLayout layout{n, p, q};
  const int m = layout.blockCount();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m * *q, m * p);
  for (int k = 1; k <= m; ++k) {
    for (int r = 1; r <= *q; ++r) {
      for (int j = 0; j < p; ++j) {
        // local row r of sub-block k sees bit (k-1)Q + r - j
        b((k - 1) * *q + r - 1, (k - 1) * p + j) = bitAt((k - 1) * *q + r - j);
      }
    }
  }
  return b;
}

Eigen::VectorXcd transmitClean(std::span<const int> bits, const ChannelDraw& ch) {
  const int n = static_cast<int>(bits.size());
  const int l = n + ch.p - 1;
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(l);
  for (int t = 1; t <= l; ++t) {
    const Eigen::VectorXcd& h = ch.tapsAt(t);
    std::complex<double> s = 0.0;
    for (int j = 0; j < ch.p; ++j) {
      int bi = t - j;
      if (bi >= 1 && bi <= n) s += static_cast<double>(bits[bi - 1]) * h(j);
    }
    y(t - 1) = s;
  }
  return y;
}

Eigen::VectorXcd transmit(std::span<const int> bits, const ChannelDraw& ch,
                          double sigma2, Rng& rng) {
  Eigen::VectorXcd y = transmitClean(bits, ch);
  for (int t = 0; t < y.size(); ++t) y(t) += rng.complexGaussian(sigma2);
  return y;
}

Eigen::VectorXcd lsEstimate(const Eigen::MatrixXd& b, const Eigen::VectorXcd& y) {
  Eigen::MatrixXd gram = b.transpose() * b;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  if (!lu.isInvertible()) throw std::runtime_error("lsEstimate: singular Gram matrix");
  Eigen::VectorXcd bty = b.cast<std::complex<double>>().adjoint() * y;
  return lu.inverse().cast<std::complex<double>>() * bty;
}

double noiseVariance(int n, int p, double snrDb, SnrConvention conv) {
  const double lin = std::pow(10.0, snrDb / 10.0);
  if (conv == SnrConvention::Asymptotic) return 1.0 / lin;
  return static_cast<double>(n) / (static_cast<double>(n + p - 1) * lin);
}

double averageSnrDb(int n, int p, double sigma2, SnrConvention conv) {
  double lin = conv == SnrConvention::Asymptotic
                   ? 1.0 / sigma2
                   : static_cast<double>(n) / (static_cast<double>(n + p - 1) * sigma2);
  return 10.0 * std::log10(lin);
}

}  // namespace cep
