#include "folia/rational.hpp"

#include <cmath>
#include <string>

#include "folia/error.hpp"

namespace folia {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::StartsAtSingularity: return "StartsAtSingularity";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::TransversalContainsSingularity: return "TransversalContainsSingularity";
    case ErrorCode::InvalidTransversal: return "InvalidTransversal";
    case ErrorCode::InvalidSurface: return "InvalidSurface";
    case ErrorCode::DegenerateBranch: return "DegenerateBranch";
    case ErrorCode::DirectionOutsideSector: return "DirectionOutsideSector";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::HoleMismatch: return "HoleMismatch";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::OrbitTooShort: return "OrbitTooShort";
    case ErrorCode::DisplacementCheckFailed: return "DisplacementCheckFailed";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Internal: return "InternalError";
  }
  return "Error";
}

Rational::Rational(long n, long d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rational::Rational(const BigInt& n, const BigInt& d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

namespace {

bool parse_integer(std::string_view s, BigInt& out) {
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') return false;
  }
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  BigInt n, d = 1;
  bool ok = parse_integer(text.substr(0, slash), n);
  if (ok && slash != std::string_view::npos) {
    auto den = text.substr(slash + 1);
    ok = !den.empty() && den[0] != '-' && den[0] != '+' && parse_integer(den, d);
  }
  if (!ok) throw Error(ErrorCode::Parse, "not a rational: \"" + std::string(text) + "\"");
  if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in \"" + std::string(text) + "\"");
  return Rational(n, d);
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite double");
  mpq_class q(v);
  return Rational(q);
}

Rational Rational::simplest_between(const Rational& lo_in, const Rational& hi_in) {
  Rational lo = min(lo_in, hi_in), hi = max(lo_in, hi_in);
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplest_between(-hi, -lo);
  Rational fl(lo.floor());
  if (fl == lo) return fl;
  if (fl + 1 <= hi) return fl + 1;
  return fl + simplest_between((hi - fl).inverse(), (lo - fl).inverse()).inverse();
}

std::string Rational::decimal(int digits) const {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  BigInt n = ::abs(q_.get_num()) * scale;
  BigInt d = q_.get_den();
  BigInt rounded = (2 * n + d) / (2 * d);
  std::string s = rounded.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (sign() < 0 && rounded != 0) s.insert(0, "-");
  return s;
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::InvalidArgument, "inverse of zero");
  return Rational(mpq_class(1) / q_);
}

BigInt Rational::floor() const {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

std::size_t Rational::bit_size() const {
  return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  q_ /= o.q_;
  return *this;
}

std::size_t Rational::hash() const {
  auto limbs = [](mpz_srcptr z) {
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) * 0x9e3779b97f4a7c15ULL;
    std::size_t n = mpz_size(z);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
           (h << 6) + (h >> 2);
    }
    return h;
  };
  std::size_t a = limbs(q_.get_num_mpz_t());
  std::size_t b = limbs(q_.get_den_mpz_t());
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace folia
