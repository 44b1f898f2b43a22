#include "subrank/field.hpp"

#include <array>
#include <charconv>

#include "subrank/errors.hpp"

namespace subrank {

namespace {

// Miller-Rabin with the first 13 prime bases is exact for n < 3317044064679887385961981.
bool miller_rabin(const BigInt& n) {
  static constexpr std::array<unsigned long, 13> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  BigInt d = n - 1;
  unsigned long s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  const BigInt n_minus_1 = n - 1;
  for (unsigned long base : kBases) {
    BigInt a = base;
    if (a % n == 0) continue;
    BigInt x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) continue;
    bool composite = true;
    for (unsigned long i = 1; i < s; ++i) {
      x = (x * x) % n;
      if (x == n_minus_1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  for (unsigned long small : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul}) {
    if (n == small) return true;
    if (n % small == 0) return false;
  }
  static const BigInt kExactLimit("3317044064679887385961981");
  if (n < kExactLimit) return miller_rabin(n);
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

void require_same_field(const Field& a, const Field& b, const char* where) {
  if (!(a == b)) {
    throw FieldMismatchError(std::string(where) + ": mixed field contexts " + a.describe() + " and " +
                             b.describe());
  }
}

Field Field::rationals() {
  static const auto q = std::make_shared<const Impl>(Impl{Kind::Rationals, BigInt(0), false});
  return Field(q);
}

Field Field::prime_field(const BigInt& p) {
  if (!is_prime(p)) throw InputError("field characteristic " + p.get_str() + " is not prime");
  const bool small = mpz_sizeinbase(p.get_mpz_t(), 2) <= 63;
  return Field(std::make_shared<const Impl>(Impl{Kind::PrimeField, p, small}));
}

Field Field::random_62bit_prime(std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned long> dist(1ul << 61, (1ul << 62) - 1);
  for (;;) {
    BigInt candidate = dist(rng) | 1ul;
    if (is_prime(candidate)) return prime_field(candidate);
  }
}

bool operator==(const Field& a, const Field& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->kind == b.impl_->kind && a.impl_->p == b.impl_->p;
}

std::string Field::describe() const {
  return is_rationals() ? std::string("Q") : "F_" + impl_->p.get_str();
}

void Field::reduce(Scalar& a) const {
  if (is_rationals()) return;
  mpz_ptr num = a.get_num_mpz_t();
  mpz_mod(num, num, impl_->p.get_mpz_t());
}

Scalar Field::from_int(long v) const {
  Scalar r(v);
  reduce(r);
  return r;
}

Scalar Field::from_integer(const BigInt& v) const {
  Scalar r(v);
  reduce(r);
  return r;
}

Scalar Field::from_rational(const mpq_class& v) const {
  if (is_rationals()) return v;
  BigInt den = v.get_den() % impl_->p;
  if (den == 0) throw SingularError("denominator " + v.get_den().get_str() + " vanishes in " + describe());
  return mul(from_integer(v.get_num()), inv(from_integer(den)));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (is_rationals()) return a + b;
  BigInt s = a.get_num() + b.get_num();
  if (s >= impl_->p) s -= impl_->p;
  return Scalar(s);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (is_rationals()) return a - b;
  BigInt s = a.get_num() - b.get_num();
  if (s < 0) s += impl_->p;
  return Scalar(s);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (is_rationals()) return a * b;
  BigInt s = a.get_num() * b.get_num();
  mpz_mod(s.get_mpz_t(), s.get_mpz_t(), impl_->p.get_mpz_t());
  return Scalar(s);
}

Scalar Field::neg(const Scalar& a) const {
  if (is_rationals()) return -a;
  if (is_zero(a)) return a;
  return Scalar(impl_->p - a.get_num());
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw SingularError("inverse of zero in " + describe());
  if (is_rationals()) return 1 / a;
  BigInt r;
  mpz_invert(r.get_mpz_t(), a.get_num().get_mpz_t(), impl_->p.get_mpz_t());
  return Scalar(r);
}

void Field::add_mul(Scalar& acc, const Scalar& a, const Scalar& b) const {
  if (is_zero(a) || is_zero(b)) return;
  if (is_rationals()) {
    acc += a * b;
    return;
  }
  mpz_ptr num = acc.get_num_mpz_t();
  mpz_addmul(num, a.get_num_mpz_t(), b.get_num_mpz_t());
  mpz_mod(num, num, impl_->p.get_mpz_t());
}

std::string Field::format(const Scalar& a) const {
  return a.get_str();  // mpq prints "a" when the denominator is 1
}

Scalar Field::parse(std::string_view text) const {
  std::string s(text);
  if (s.empty()) throw InputError("empty scalar literal");
  mpq_class v;
  if (v.set_str(s, 10) != 0) throw InputError("malformed scalar literal '" + s + "'");
  if (v.get_den() == 0) throw InputError("zero denominator in scalar literal '" + s + "'");
  v.canonicalize();
  return from_rational(v);
}

Scalar Field::random(std::mt19937_64& rng, long bound) const {
  if (is_rationals()) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    return Scalar(dist(rng));
  }
  if (impl_->small) {
    std::uniform_int_distribution<unsigned long> dist(0, impl_->p.get_ui() - 1);
    return Scalar(BigInt(dist(rng)));
  }
  gmp_randclass state(gmp_randinit_default);
  state.seed(static_cast<unsigned long>(rng()));
  return Scalar(state.get_z_range(impl_->p));
}

}  // namespace subrank
