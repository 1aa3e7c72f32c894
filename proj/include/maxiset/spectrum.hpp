#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace maxiset {

/// Orthonormal system a coefficient sequence is expressed in.
///
///  * cosine:              φ_j(x) = √2 cos(π j x),                 j = 1..J
///  * complex_exponential: φ_j(x) = exp(2π i j x),                 j = −J..J
///  * haar:                φ_j = ψ_{i,m}, j = 2^i + m (0 ≤ m < 2^i),  j = 1..J
enum class Basis { cosine, complex_exponential, haar };

std::string_view to_string(Basis basis);
Basis basis_from_string(std::string_view name);

/// A finite coefficient sequence θ in a given basis.
///
/// Real bases store θ_1..θ_J at positions 0..J−1. The complex-exponential basis
/// stores θ_0..θ_J at positions 0..J; negative frequencies are implied by
/// θ_{−j} = conj(θ_j), so the represented function is real.
class Spectrum {
 public:
  using value_type = std::complex<double>;

  Spectrum() = default;
  Spectrum(Basis basis, std::vector<value_type> values);

  static Spectrum from_real(Basis basis, std::vector<double> values);
  static Spectrum zeros(Basis basis, std::size_t J);

  Basis basis() const { return basis_; }

  /// Highest stored frequency J.
  std::size_t max_frequency() const;
  /// Number of stored positions.
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// Frequency held at storage position `pos`.
  std::int64_t frequency(std::size_t pos) const {
    return static_cast<std::int64_t>(pos) + first_frequency();
  }
  std::int64_t first_frequency() const {
    return basis_ == Basis::complex_exponential ? 0 : 1;
  }

  std::span<const value_type> values() const { return values_; }
  std::span<value_type> values() { return values_; }
  const value_type& operator[](std::size_t pos) const { return values_[pos]; }
  value_type& operator[](std::size_t pos) { return values_[pos]; }

  /// θ_j for a (possibly negative) frequency; zero outside the stored range.
  value_type at_frequency(std::int64_t j) const;

  /// Multiplicity of a storage position in Σ_{j∈index set} |θ_j|²: 2 for
  /// complex-exponential j ≥ 1 (the ±j pair), otherwise 1.
  double multiplicity(std::size_t pos) const {
    return (basis_ == Basis::complex_exponential && pos > 0) ? 2.0 : 1.0;
  }

  /// ‖f‖² = Σ_j |θ_j|² over the full index set.
  double energy() const;

  std::vector<double> real_parts() const;

  Spectrum& operator*=(double c);
  friend Spectrum operator*(double c, Spectrum s) { return s *= c; }
  friend Spectrum operator-(const Spectrum& a, const Spectrum& b);
  friend Spectrum operator+(const Spectrum& a, const Spectrum& b);

 private:
  Basis basis_ = Basis::cosine;
  std::vector<value_type> values_;
};

/// y_j = θ_j + (σ/√n) ξ_j, stored with the indexing of the generating Spectrum.
struct SequenceObservation {
  Spectrum y;
  std::int64_t n = 1;
  double sigma = 1.0;
};

/// An i.i.d. sample on [0, 1).
class Sample {
 public:
  Sample() = default;
  /// Throws InvalidInput if any observation lies outside [0, 1).
  explicit Sample(std::vector<double> observations);

  std::span<const double> observations() const { return x_; }
  std::size_t size() const { return x_.size(); }

 private:
  std::vector<double> x_;
};

}  // namespace maxiset
