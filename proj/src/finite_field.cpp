#include "conicwalk/finite_field.hpp"

#include <string>

#include "conicwalk/error.hpp"

namespace conicwalk {

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  std::uint32_t d = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint16_t> add;
  std::vector<std::uint16_t> mul;
  std::vector<std::uint16_t> neg;
  std::vector<std::int8_t> chi;
  // Smaller square root per code, -1 for non-squares.
  std::vector<std::int32_t> sqrt;

  std::vector<std::uint32_t> decode(std::uint32_t code) const {
    std::vector<std::uint32_t> c(d);
    for (std::uint32_t i = 0; i < d; ++i) {
      c[i] = code % p;
      code /= p;
    }
    return c;
  }
  std::uint32_t encode(const std::vector<std::uint32_t>& c) const {
    std::uint32_t code = 0;
    for (std::uint32_t i = d; i-- > 0;) code = code * p + c[i];
    return code;
  }
};

}  // namespace detail

namespace {

using detail::FieldData;

const FieldData& checked_same(const FieldData* a, const FieldData* b) {
  if (a != b || a == nullptr) {
    throw Error(Errc::FieldMismatch, "field elements belong to different fields");
  }
  return *a;
}

// Remainder of `num` modulo the monic polynomial `den`, coefficients low to high.
std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> num,
                                    std::span<const std::uint32_t> den, std::uint32_t p) {
  const std::size_t dd = den.size() - 1;
  while (num.size() > dd) {
    const std::uint32_t lead = num.back() % p;
    const std::size_t shift = num.size() - 1 - dd;
    if (lead != 0) {
      for (std::size_t i = 0; i <= dd; ++i) {
        num[shift + i] = static_cast<std::uint32_t>(
            (num[shift + i] + static_cast<std::uint64_t>(p - lead) * den[i]) % p);
      }
    }
    num.pop_back();
  }
  return num;
}

std::uint64_t checked_power(std::uint32_t p, std::uint32_t d, std::uint64_t limit) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    q *= p;
    if (q > limit) return limit + 1;
  }
  return q;
}

std::uint32_t pow_code(const FieldData& f, std::uint32_t x, std::uint64_t e) {
  std::uint32_t result = 1;
  while (e > 0) {
    if (e & 1U) result = f.mul[static_cast<std::size_t>(result) * f.q + x];
    x = f.mul[static_cast<std::size_t>(x) * f.q + x];
    e >>= 1U;
  }
  return result;
}

std::shared_ptr<const FieldData> build_tables(std::uint32_t p, std::uint32_t d,
                                              std::vector<std::uint32_t> modulus) {
  auto f = std::make_shared<FieldData>();
  f->p = p;
  f->d = d;
  f->q = static_cast<std::uint32_t>(checked_power(p, d, UINT32_MAX));
  f->modulus = std::move(modulus);
  const std::uint32_t q = f->q;
  const std::size_t qq = static_cast<std::size_t>(q) * q;

  std::vector<std::vector<std::uint32_t>> digits(q);
  for (std::uint32_t x = 0; x < q; ++x) digits[x] = f->decode(x);

  f->add.resize(qq);
  f->mul.resize(qq);
  f->neg.resize(q);
  std::vector<std::uint32_t> sum(d);
  for (std::uint32_t x = 0; x < q; ++x) {
    for (std::uint32_t i = 0; i < d; ++i) sum[i] = (p - digits[x][i]) % p;
    f->neg[x] = static_cast<std::uint16_t>(f->encode(sum));
    for (std::uint32_t y = 0; y < q; ++y) {
      for (std::uint32_t i = 0; i < d; ++i) sum[i] = (digits[x][i] + digits[y][i]) % p;
      f->add[static_cast<std::size_t>(x) * q + y] = static_cast<std::uint16_t>(f->encode(sum));

      std::uint32_t prod_code = 0;
      if (d == 1) {
        prod_code = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * y % p);
      } else {
        std::vector<std::uint32_t> prod(2 * d - 1, 0);
        for (std::uint32_t i = 0; i < d; ++i) {
          for (std::uint32_t j = 0; j < d; ++j) {
            prod[i + j] = static_cast<std::uint32_t>(
                (prod[i + j] + static_cast<std::uint64_t>(digits[x][i]) * digits[y][j]) % p);
          }
        }
        auto rem = poly_rem(std::move(prod), f->modulus, p);
        rem.resize(d, 0);
        prod_code = f->encode(rem);
      }
      f->mul[static_cast<std::size_t>(x) * q + y] = static_cast<std::uint16_t>(prod_code);
    }
  }

  const std::uint32_t minus_one = f->neg[1];
  f->chi.resize(q);
  for (std::uint32_t x = 0; x < q; ++x) {
    const std::uint32_t r = pow_code(*f, x, (q - 1) / 2);
    f->chi[x] = r == 1 ? 1 : (r == minus_one ? -1 : 0);
  }

  f->sqrt.assign(q, -1);
  for (std::uint32_t y = 0; y < q; ++y) {
    const std::uint32_t sq = f->mul[static_cast<std::size_t>(y) * q + y];
    if (f->sqrt[sq] < 0) f->sqrt[sq] = static_cast<std::int32_t>(y);
  }
  return f;
}

void require_odd_prime(std::uint32_t p) {
  if (p % 2 == 0 || !is_prime(p)) {
    throw Error(Errc::NotOddPrime, "q must be an odd prime power (got characteristic " +
                                       std::to_string(p) + ")");
  }
}

std::uint32_t checked_order(std::uint32_t p, std::uint32_t d, std::uint32_t cap) {
  if (cap > UINT16_MAX) throw Error(Errc::InvalidArgument, "field cap above 65535");
  const std::uint64_t q = checked_power(p, d, cap);
  if (q > cap) {
    throw Error(Errc::CapExceeded,
                "field order " + std::to_string(p) + "^" + std::to_string(d) +
                    " exceeds cap " + std::to_string(cap));
  }
  return static_cast<std::uint32_t>(q);
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly) {
  if (poly.size() < 2 || poly.back() % p != 1) return false;
  const std::uint32_t deg = static_cast<std::uint32_t>(poly.size() - 1);
  if (deg == 1) return true;
  std::vector<std::uint32_t> f(poly.begin(), poly.end());
  for (std::uint32_t k = 1; k <= deg / 2; ++k) {
    const std::uint64_t count = checked_power(p, k, UINT32_MAX);
    std::vector<std::uint32_t> g(k + 1, 0);
    g[k] = 1;
    for (std::uint64_t t = 0; t < count; ++t) {
      std::uint64_t rest = t;
      for (std::uint32_t i = 0; i < k; ++i) {
        g[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      const auto rem = poly_rem(f, g, p);
      bool zero = true;
      for (auto c : rem) zero = zero && (c % p == 0);
      if (zero) return false;
    }
  }
  return true;
}

Field make_prime_field(std::uint32_t p) {
  require_odd_prime(p);
  checked_order(p, 1, kDefaultFieldCap);
  return Field(build_tables(p, 1, {0, 1}));
}

Field make_extension_field(std::uint32_t p, std::uint32_t d, std::uint32_t cap) {
  require_odd_prime(p);
  if (d < 2) throw Error(Errc::InvalidArgument, "extension degree must be at least 2");
  const std::uint32_t q = checked_order(p, d, cap);
  // Candidate codes enumerate (c_{d-1}, ..., c_0) with c_{d-1} most significant.
  std::vector<std::uint32_t> poly(d + 1, 0);
  poly[d] = 1;
  for (std::uint32_t t = 0; t < q; ++t) {
    std::uint32_t rest = t;
    for (std::uint32_t i = 0; i < d; ++i) {
      poly[i] = rest % p;
      rest /= p;
    }
    if (is_irreducible(p, poly)) return Field(build_tables(p, d, poly));
  }
  throw Error(Errc::InternalAssertion, "no irreducible polynomial found");
}

Field make_extension_field(std::uint32_t p, const std::vector<std::uint32_t>& modulus,
                           std::uint32_t cap) {
  require_odd_prime(p);
  if (modulus.size() < 3) throw Error(Errc::InvalidArgument, "extension degree must be at least 2");
  const auto d = static_cast<std::uint32_t>(modulus.size() - 1);
  checked_order(p, d, cap);
  for (auto c : modulus) {
    if (c >= p) throw Error(Errc::InvalidArgument, "modulus coefficient not reduced mod p");
  }
  if (modulus.back() != 1) throw Error(Errc::InvalidArgument, "modulus must be monic");
  if (!is_irreducible(p, modulus)) {
    throw Error(Errc::NotIrreducible, "modulus is reducible over Z_" + std::to_string(p));
  }
  return Field(build_tables(p, d, modulus));
}

Field make_field(std::uint32_t p, std::uint32_t d) {
  return d == 1 ? make_prime_field(p) : make_extension_field(p, d);
}

std::optional<Field> field_of_order(std::uint32_t q, std::uint32_t cap) {
  if (q < 3 || q % 2 == 0 || q > cap) return std::nullopt;
  std::uint32_t p = 3;
  while (q % p != 0) p += 2;
  std::uint32_t d = 0;
  std::uint32_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++d;
  }
  if (rest != 1) return std::nullopt;
  return d == 1 ? make_prime_field(p) : make_extension_field(p, d, cap);
}

std::uint32_t Field::characteristic() const noexcept { return data_->p; }
std::uint32_t Field::degree() const noexcept { return data_->d; }
std::uint32_t Field::order() const noexcept { return data_->q; }
const std::vector<std::uint32_t>& Field::modulus() const noexcept { return data_->modulus; }

FieldElement Field::zero() const { return FieldElement(data_.get(), 0); }
FieldElement Field::one() const { return FieldElement(data_.get(), 1); }

FieldElement Field::element(std::uint32_t code) const {
  if (code >= data_->q) {
    throw Error(Errc::IndexInvalid, "element code " + std::to_string(code) + " out of range");
  }
  return FieldElement(data_.get(), code);
}

FieldElement Field::from_int(std::int64_t value) const {
  const auto p = static_cast<std::int64_t>(data_->p);
  return FieldElement(data_.get(), static_cast<std::uint32_t>(((value % p) + p) % p));
}

FieldElement Field::from_coefficients(std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() > data_->d) {
    throw Error(Errc::InvalidArgument, "too many coefficients for field degree");
  }
  const auto p = static_cast<std::int64_t>(data_->p);
  std::vector<std::uint32_t> c(data_->d, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    c[i] = static_cast<std::uint32_t>(((coeffs[i] % p) + p) % p);
  }
  return FieldElement(data_.get(), data_->encode(c));
}

std::vector<FieldElement> Field::elements() const {
  std::vector<FieldElement> out;
  out.reserve(data_->q);
  for (std::uint32_t x = 0; x < data_->q; ++x) out.emplace_back(data_.get(), x);
  return out;
}

std::uint32_t Field::add(std::uint32_t x, std::uint32_t y) const noexcept {
  return data_->add[static_cast<std::size_t>(x) * data_->q + y];
}
std::uint32_t Field::sub(std::uint32_t x, std::uint32_t y) const noexcept {
  return data_->add[static_cast<std::size_t>(x) * data_->q + data_->neg[y]];
}
std::uint32_t Field::neg(std::uint32_t x) const noexcept { return data_->neg[x]; }
std::uint32_t Field::mul(std::uint32_t x, std::uint32_t y) const noexcept {
  return data_->mul[static_cast<std::size_t>(x) * data_->q + y];
}
int Field::chi(std::uint32_t x) const noexcept { return data_->chi[x]; }

std::vector<std::uint32_t> FieldElement::coefficients() const { return field_->decode(code_); }

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
  const auto& f = checked_same(field_, rhs.field_);
  return FieldElement(field_, f.add[static_cast<std::size_t>(code_) * f.q + rhs.code_]);
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
  const auto& f = checked_same(field_, rhs.field_);
  return FieldElement(field_, f.add[static_cast<std::size_t>(code_) * f.q + f.neg[rhs.code_]]);
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
  const auto& f = checked_same(field_, rhs.field_);
  return FieldElement(field_, f.mul[static_cast<std::size_t>(code_) * f.q + rhs.code_]);
}

FieldElement FieldElement::operator/(const FieldElement& rhs) const { return *this * inv(rhs); }

FieldElement FieldElement::operator-() const { return FieldElement(field_, field_->neg[code_]); }

FieldElement pow(const FieldElement& x, std::uint64_t exponent) {
  return FieldElement(x.field_data(), pow_code(*x.field_data(), x.code(), exponent));
}

FieldElement inv(const FieldElement& x) {
  if (x.is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  return pow(x, x.field_data()->q - 2);
}

int quadratic_character(const FieldElement& x) { return x.field_data()->chi[x.code()]; }

std::optional<FieldElement> sqrt(const FieldElement& x) {
  const std::int32_t r = x.field_data()->sqrt[x.code()];
  if (r < 0) return std::nullopt;
  return FieldElement(x.field_data(), static_cast<std::uint32_t>(r));
}

std::optional<FieldElement> sqrt_by_exponent(const FieldElement& x) {
  const auto& f = *x.field_data();
  if (f.q % 4 != 3) return std::nullopt;
  const FieldElement r = pow(x, (static_cast<std::uint64_t>(f.q) + 1) / 4);
  if (r * r != x) return std::nullopt;
  const FieldElement other = -r;
  return other < r ? other : r;
}

}  // namespace conicwalk
