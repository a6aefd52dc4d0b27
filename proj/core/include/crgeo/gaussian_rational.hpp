#ifndef CRGEO_GAUSSIAN_RATIONAL_HPP
#define CRGEO_GAUSSIAN_RATIONAL_HPP

#include <gmpxx.h>
#include <ostream>
#include <stdexcept>
#include <string>

namespace crgeo {

/// Exact element of Q(i). All coefficient arithmetic in the library runs
/// through this type; there is no floating point on any invariant path.
class GaussianRational {
public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(long n) : re_(n), im_(0) {}
  GaussianRational(const mpq_class& re) : re_(re), im_(0) {}
  GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  /// num/den with den > 0, reduced.
  static GaussianRational rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("GaussianRational: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return GaussianRational(q);
  }
  static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }

  GaussianRational conj() const { return GaussianRational(re_, -im_); }
  /// re^2 + im^2 (= |x|^2, exact).
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
  GaussianRational operator+(const GaussianRational& o) const {
    return GaussianRational(re_ + o.re_, im_ + o.im_);
  }
  GaussianRational operator-(const GaussianRational& o) const {
    return GaussianRational(re_ - o.re_, im_ - o.im_);
  }
  GaussianRational operator*(const GaussianRational& o) const {
    return GaussianRational(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
  }
  GaussianRational inverse() const {
    if (is_zero()) throw std::domain_error("GaussianRational: division by zero");
    mpq_class n = norm();
    return GaussianRational(re_ / n, -im_ / n);
  }
  GaussianRational operator/(const GaussianRational& o) const { return *this * o.inverse(); }

  GaussianRational& operator+=(const GaussianRational& o) { re_ += o.re_; im_ += o.im_; return *this; }
  GaussianRational& operator-=(const GaussianRational& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }

  bool operator==(const GaussianRational& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const GaussianRational& o) const { return !(*this == o); }

  double to_double() const { return re_.get_d() + im_.get_d(); } // only for numeric-tier code

  /// Canonical rendering: "0", "3/2", "i", "-i", "2*i", "1/2-3*i", "1+i".
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re_ != 0) out += re_.get_str();
    if (im_ != 0) {
      if (im_ == 1) out += out.empty() ? "i" : "+i";
      else if (im_ == -1) out += "-i";
      else {
        if (im_ > 0 && !out.empty()) out += "+";
        out += im_.get_str() + "*i";
      }
    }
    return out;
  }

private:
  mpq_class re_, im_;
};

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << x.str(); }

inline GaussianRational operator*(long a, const GaussianRational& x) { return GaussianRational(a) * x; }

} // namespace crgeo

#endif
