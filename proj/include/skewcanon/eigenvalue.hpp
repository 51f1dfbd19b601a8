#pragma once

// Eigenvalue of a matrix pencil: a finite complex number, the distinguished
// value infinity, or a symbolic placeholder label standing for an arbitrary
// (unspecified) finite value.

#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace skewcanon {

using cplx = std::complex<double>;

class Eigenvalue {
 public:
  enum class Kind : std::uint8_t { Finite, Infinite, Symbolic };

  Eigenvalue() : kind_(Kind::Finite), value_(0.0) {}

  static Eigenvalue finite(cplx v) {
    Eigenvalue e;
    e.kind_ = Kind::Finite;
    e.value_ = v;
    return e;
  }
  static Eigenvalue finite(double re, double im = 0.0) { return finite(cplx(re, im)); }
  static Eigenvalue infinity() {
    Eigenvalue e;
    e.kind_ = Kind::Infinite;
    return e;
  }
  static Eigenvalue symbolic(std::string label) {
    if (label.empty()) throw std::invalid_argument("symbolic eigenvalue needs a nonempty label");
    Eigenvalue e;
    e.kind_ = Kind::Symbolic;
    e.label_ = std::move(label);
    return e;
  }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinite() const { return kind_ == Kind::Infinite; }
  bool is_symbolic() const { return kind_ == Kind::Symbolic; }

  cplx value() const {
    if (!is_finite()) throw std::logic_error("eigenvalue is not a finite numeric value");
    return value_;
  }
  const std::string& label() const {
    if (!is_symbolic()) throw std::logic_error("eigenvalue is not symbolic");
    return label_;
  }

  // Exact comparison: finite values bitwise-equal as complex doubles, labels
  // string-equal, infinity only equal to infinity.
  friend bool operator==(const Eigenvalue& a, const Eigenvalue& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
      case Kind::Finite: return a.value_ == b.value_;
      case Kind::Infinite: return true;
      case Kind::Symbolic: return a.label_ == b.label_;
    }
    return false;
  }
  friend bool operator!=(const Eigenvalue& a, const Eigenvalue& b) { return !(a == b); }

  // Tolerance-aware match used by ops that take an explicit tolerance.
  bool matches(const Eigenvalue& o, double tol) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == Kind::Finite) return std::abs(value_ - o.value_) <= tol;
    return *this == o;
  }

  // Total order for canonical sorting: finite (by re, then im) < infinite < symbolic (by label).
  friend bool operator<(const Eigenvalue& a, const Eigenvalue& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
    switch (a.kind_) {
      case Kind::Finite:
        if (a.value_.real() != b.value_.real()) return a.value_.real() < b.value_.real();
        return a.value_.imag() < b.value_.imag();
      case Kind::Infinite: return false;
      case Kind::Symbolic: return a.label_ < b.label_;
    }
    return false;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Infinite: return "inf";
      case Kind::Symbolic: return label_;
      case Kind::Finite: break;
    }
    std::ostringstream os;
    os << value_.real();
    if (value_.imag() != 0.0) os << (value_.imag() > 0 ? "+" : "") << value_.imag() << "i";
    return os.str();
  }

 private:
  Kind kind_;
  cplx value_{0.0, 0.0};
  std::string label_;
};

}  // namespace skewcanon
