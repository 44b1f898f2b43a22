#pragma once

#include <gmpxx.h>

#include <memory>
#include <random>
#include <string>
#include <string_view>

namespace subrank {

/// Field elements. Rationals are kept canonical by GMP (lowest terms, positive
/// denominator); prime-field residues are integers in [0, p).
using Scalar = mpq_class;

/// Arbitrary-precision integers (weights of one-parameter subgroups, bounds).
using BigInt = mpz_class;

/// The coefficient field of a computation: either Q or F_p.
///
/// Field values are cheap to copy (shared immutable state) and compare equal
/// when they describe the same field. All arithmetic on Scalars goes through a
/// Field so that residues stay reduced.
class Field {
 public:
  enum class Kind { Rationals, PrimeField };

  /// Q.
  static Field rationals();
  /// F_p. Throws InputError if p is not prime.
  static Field prime_field(const BigInt& p);
  /// A random prime in [2^61, 2^62) drawn from `rng`.
  static Field random_62bit_prime(std::mt19937_64& rng);

  Kind kind() const { return impl_->kind; }
  bool is_rationals() const { return impl_->kind == Kind::Rationals; }
  /// The characteristic; 0 for Q.
  const BigInt& characteristic() const { return impl_->p; }

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }
  Scalar from_int(long v) const;
  Scalar from_integer(const BigInt& v) const;
  /// Maps a rational into the field; throws SingularError if the denominator vanishes mod p.
  Scalar from_rational(const mpq_class& v) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  /// Throws SingularError on zero.
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
  /// acc += a * b
  void add_mul(Scalar& acc, const Scalar& a, const Scalar& b) const;

  static bool is_zero(const Scalar& a) { return sgn(a) == 0; }
  static bool is_one(const Scalar& a) { return a == 1; }

  /// Decimal form: "a" or "a/b" over Q, "k" over F_p.
  std::string format(const Scalar& a) const;
  /// Parses "a", "-a" or "a/b"; over F_p the value is reduced mod p.
  Scalar parse(std::string_view text) const;

  /// Uniform random element (over Q: small integers in [-bound, bound]).
  Scalar random(std::mt19937_64& rng, long bound = 5) const;

  /// "Q" or "F_p".
  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b);

 private:
  struct Impl {
    Kind kind;
    BigInt p;
    bool small = false;  // p < 2^63, enables 64-bit kernels
  };
  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  void reduce(Scalar& a) const;

  std::shared_ptr<const Impl> impl_;

 public:
  /// True when p fits the 64-bit modular kernels.
  bool has_word_prime() const { return impl_->small; }
  unsigned long word_prime() const { return impl_->p.get_ui(); }
};

/// Deterministic primality test (Miller-Rabin with a fixed base set that is
/// exact below 3.3e24; BPSW-backed beyond that).
bool is_prime(const BigInt& n);

/// Throws FieldMismatchError unless a == b.
void require_same_field(const Field& a, const Field& b, const char* where);

}  // namespace subrank
