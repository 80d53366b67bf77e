#pragma once

// Arithmetic in GF(q), q = p^d odd, backed by precomputed addition and
// multiplication tables. Elements are encoded as the integer
// sum(c_i * p^i) of their coefficient vector, so integer order on codes is
// the canonical element order: lexicographic with the leading coefficient
// most significant and the constant term last. For d = 1 the code is the
// residue itself.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace conicwalk {

/// Largest field order for which arithmetic tables are built.
inline constexpr std::uint32_t kDefaultFieldCap = 1024;

namespace detail {
struct FieldData;
}

class FieldElement;

/// Shared handle to an immutable field. Copies are cheap and refer to the
/// same tables; two handles compare equal iff they share those tables.
class Field {
 public:
  std::uint32_t characteristic() const noexcept;
  std::uint32_t degree() const noexcept;
  std::uint32_t order() const noexcept;
  /// Monic modulus as [c_0, ..., c_d]. For prime fields this is x - 0, i.e. [0, 1].
  const std::vector<std::uint32_t>& modulus() const noexcept;
  bool is_one_mod_four() const noexcept { return order() % 4 == 1; }

  FieldElement zero() const;
  FieldElement one() const;
  /// Element with the given code; throws IndexInvalid when code >= q.
  FieldElement element(std::uint32_t code) const;
  /// Image of an integer under Z -> Z_p -> GF(q).
  FieldElement from_int(std::int64_t value) const;
  /// Coefficients c_0..c_{k-1} with k <= d, each reduced mod p.
  FieldElement from_coefficients(std::span<const std::int64_t> coeffs) const;
  /// All q elements in canonical order.
  std::vector<FieldElement> elements() const;

  // Table lookups on raw codes, for enumeration loops.
  std::uint32_t add(std::uint32_t x, std::uint32_t y) const noexcept;
  std::uint32_t sub(std::uint32_t x, std::uint32_t y) const noexcept;
  std::uint32_t neg(std::uint32_t x) const noexcept;
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const noexcept;
  int chi(std::uint32_t x) const noexcept;

  const detail::FieldData* data() const noexcept { return data_.get(); }
  friend bool operator==(const Field& lhs, const Field& rhs) noexcept {
    return lhs.data_ == rhs.data_;
  }

 private:
  friend Field make_prime_field(std::uint32_t p);
  friend Field make_extension_field(std::uint32_t p, std::uint32_t d, std::uint32_t cap);
  friend Field make_extension_field(std::uint32_t p, const std::vector<std::uint32_t>& modulus,
                                    std::uint32_t cap);
  explicit Field(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}

  std::shared_ptr<const detail::FieldData> data_;
};

/// Value type for one element. Holds a non-owning pointer to its field's
/// tables: the originating Field must outlive it. Mixing elements of two
/// different fields in arithmetic throws FieldMismatch.
class FieldElement {
 public:
  FieldElement(const detail::FieldData* field, std::uint32_t code) : field_(field), code_(code) {}

  std::uint32_t code() const noexcept { return code_; }
  const detail::FieldData* field_data() const noexcept { return field_; }
  bool is_zero() const noexcept { return code_ == 0; }
  /// Coefficients c_0..c_{d-1}.
  std::vector<std::uint32_t> coefficients() const;

  FieldElement operator+(const FieldElement& rhs) const;
  FieldElement operator-(const FieldElement& rhs) const;
  FieldElement operator*(const FieldElement& rhs) const;
  FieldElement operator/(const FieldElement& rhs) const;
  FieldElement operator-() const;

  friend bool operator==(const FieldElement& lhs, const FieldElement& rhs) noexcept {
    return lhs.field_ == rhs.field_ && lhs.code_ == rhs.code_;
  }
  friend std::strong_ordering operator<=>(const FieldElement& lhs,
                                          const FieldElement& rhs) noexcept {
    return lhs.code_ <=> rhs.code_;
  }

 private:
  const detail::FieldData* field_;
  std::uint32_t code_;
};

/// GF(p). Throws NotOddPrime unless p is an odd prime, CapExceeded above
/// kDefaultFieldCap.
Field make_prime_field(std::uint32_t p);

/// GF(p^d) for d >= 2, reduced modulo the lexicographically smallest monic
/// irreducible polynomial of degree d (comparing c_{d-1} first).
Field make_extension_field(std::uint32_t p, std::uint32_t d, std::uint32_t cap = kDefaultFieldCap);

/// GF(p^d) over a caller-chosen monic modulus [c_0..c_d]; throws
/// NotIrreducible if it factors over Z_p.
Field make_extension_field(std::uint32_t p, const std::vector<std::uint32_t>& modulus,
                           std::uint32_t cap = kDefaultFieldCap);

/// Dispatches on d: prime field for d = 1, extension otherwise.
Field make_field(std::uint32_t p, std::uint32_t d = 1);

/// If q is an odd prime power p^d within the cap, the matching field.
std::optional<Field> field_of_order(std::uint32_t q, std::uint32_t cap = kDefaultFieldCap);

bool is_prime(std::uint64_t n) noexcept;

FieldElement inv(const FieldElement& x);
FieldElement pow(const FieldElement& x, std::uint64_t exponent);

/// x^((q-1)/2) read as -1, 0 or 1.
int quadratic_character(const FieldElement& x);

/// The canonically smaller square root, 0 for 0, nullopt for non-squares.
std::optional<FieldElement> sqrt(const FieldElement& x);

/// x^((q+1)/4), normalized to the smaller root. Only defined for q = 3 mod 4;
/// returns nullopt for non-squares or when q = 1 mod 4.
std::optional<FieldElement> sqrt_by_exponent(const FieldElement& x);

/// Irreducibility over Z_p by trial division against every monic polynomial
/// of degree 1..deg/2. Coefficients are [c_0..c_d].
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly);

}  // namespace conicwalk
