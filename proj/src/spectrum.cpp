#include "maxiset/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxiset/error.hpp"

namespace maxiset {

std::string_view to_string(Basis basis) {
  switch (basis) {
    case Basis::cosine:
      return "cosine";
    case Basis::complex_exponential:
      return "complex_exponential";
    case Basis::haar:
      return "haar";
  }
  return "unknown";
}

Basis basis_from_string(std::string_view name) {
  if (name == "cosine") return Basis::cosine;
  if (name == "complex_exponential" || name == "complex-exponential" ||
      name == "fourier")
    return Basis::complex_exponential;
  if (name == "haar") return Basis::haar;
  throw InvalidInput("unknown basis '" + std::string(name) + "'");
}

Spectrum::Spectrum(Basis basis, std::vector<value_type> values)
    : basis_(basis), values_(std::move(values)) {
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw InvalidInput("spectrum contains a non-finite coefficient");
    }
  }
  if (basis_ != Basis::complex_exponential) {
    for (const auto& v : values_) {
      if (v.imag() != 0.0) {
        throw InvalidInput("real basis with complex coefficient");
      }
    }
  } else if (!values_.empty() && values_[0].imag() != 0.0) {
    throw InvalidInput("θ_0 must be real for a real-valued function");
  }
}

Spectrum Spectrum::from_real(Basis basis, std::vector<double> values) {
  std::vector<value_type> c(values.begin(), values.end());
  return Spectrum(basis, std::move(c));
}

Spectrum Spectrum::zeros(Basis basis, std::size_t J) {
  const std::size_t len = basis == Basis::complex_exponential ? J + 1 : J;
  return Spectrum(basis, std::vector<value_type>(len));
}

std::size_t Spectrum::max_frequency() const {
  if (values_.empty()) return 0;
  return basis_ == Basis::complex_exponential ? values_.size() - 1
                                              : values_.size();
}

Spectrum::value_type Spectrum::at_frequency(std::int64_t j) const {
  if (basis_ == Basis::complex_exponential) {
    const std::int64_t a = j < 0 ? -j : j;
    if (a >= static_cast<std::int64_t>(values_.size())) return {};
    return j < 0 ? std::conj(values_[a]) : values_[a];
  }
  const std::int64_t pos = j - 1;
  if (pos < 0 || pos >= static_cast<std::int64_t>(values_.size())) return {};
  return values_[pos];
}

double Spectrum::energy() const {
  double e = 0.0;
  for (std::size_t p = 0; p < values_.size(); ++p) {
    e += multiplicity(p) * std::norm(values_[p]);
  }
  return e;
}

std::vector<double> Spectrum::real_parts() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(),
                 [](const value_type& v) { return v.real(); });
  return out;
}

Spectrum& Spectrum::operator*=(double c) {
  for (auto& v : values_) v *= c;
  return *this;
}

namespace {

Spectrum combine(const Spectrum& a, const Spectrum& b, double sign) {
  if (a.basis() != b.basis()) {
    throw InvalidInput("cannot combine spectra in different bases");
  }
  std::vector<Spectrum::value_type> out(std::max(a.size(), b.size()));
  for (std::size_t p = 0; p < a.size(); ++p) out[p] += a[p];
  for (std::size_t p = 0; p < b.size(); ++p) out[p] += sign * b[p];
  return Spectrum(a.basis(), std::move(out));
}

}  // namespace

Spectrum operator-(const Spectrum& a, const Spectrum& b) {
  return combine(a, b, -1.0);
}

Spectrum operator+(const Spectrum& a, const Spectrum& b) {
  return combine(a, b, 1.0);
}

Sample::Sample(std::vector<double> observations) : x_(std::move(observations)) {
  for (double v : x_) {
    if (!(v >= 0.0 && v < 1.0)) {
      throw InvalidInput("sample observation outside [0, 1)");
    }
  }
}

}  // namespace maxiset
