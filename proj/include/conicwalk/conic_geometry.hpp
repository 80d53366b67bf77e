#pragma once

// Weighted quadrance Q(A, B) = a (x_B - x_A)^2 + b (y_B - y_A)^2 over GF(q)
// with ab = c^2, the origin-centred level sets ("classes") it induces on
// GF(q)^2, their sizes, and the pairwise intersection counts of translated
// level sets.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "conicwalk/finite_field.hpp"

namespace conicwalk {

/// Enumeration oracles refuse fields larger than this unless raised.
inline constexpr std::uint32_t kDefaultOracleCap = 125;

class ConicParams {
 public:
  /// c is the canonical square root of ab; throws InvalidConic when ab is
  /// not a nonzero square.
  static ConicParams from_ab(const Field& field, const FieldElement& a, const FieldElement& b);
  /// Throws InvalidConic unless a, b, c are nonzero with ab = c^2.
  static ConicParams from_abc(const Field& field, const FieldElement& a, const FieldElement& b,
                              const FieldElement& c);
  /// a = b = c = 1.
  static ConicParams unit(const Field& field);

  const Field& field() const noexcept { return field_; }
  const FieldElement& a() const noexcept { return a_; }
  const FieldElement& b() const noexcept { return b_; }
  const FieldElement& c() const noexcept { return c_; }

 private:
  ConicParams(Field field, FieldElement a, FieldElement b, FieldElement c)
      : field_(std::move(field)), a_(a), b_(b), c_(c) {}

  Field field_;
  FieldElement a_;
  FieldElement b_;
  FieldElement c_;
};

struct Point {
  FieldElement x;
  FieldElement y;

  friend bool operator==(const Point&, const Point&) = default;
  friend std::strong_ordering operator<=>(const Point& lhs, const Point& rhs) {
    if (auto c = lhs.x <=> rhs.x; c != 0) return c;
    return lhs.y <=> rhs.y;
  }
};

/// How the null cone {Q = 0} is partitioned when q = 1 (mod 4). Split puts
/// the origin alone in class 0 and the other null points in the isotropic
/// class; Unsplit keeps the whole cone as class 0 (diagnostic only). For
/// q = 3 (mod 4) the cone is just the origin and both modes coincide.
enum class NullCircle { Split, Unsplit };

/// Label of a class: a field element, or the isotropic class.
class ClassIndex {
 public:
  static ClassIndex finite(const FieldElement& value) { return ClassIndex(false, value.code()); }
  static ClassIndex finite_code(std::uint32_t code) { return ClassIndex(false, code); }
  /// Throws IndexInvalid unless q = 1 (mod 4).
  static ClassIndex isotropic(const Field& field);

  bool is_isotropic() const noexcept { return isotropic_; }
  bool is_origin() const noexcept { return !isotropic_ && code_ == 0; }
  /// Element code for finite classes; meaningless for the isotropic class.
  std::uint32_t code() const noexcept { return code_; }
  /// Throws IndexInvalid for the isotropic class.
  FieldElement value(const Field& field) const;

  friend bool operator==(const ClassIndex&, const ClassIndex&) = default;
  /// Finite classes in element order, isotropic last.
  friend std::strong_ordering operator<=>(const ClassIndex& lhs, const ClassIndex& rhs) {
    if (auto c = lhs.isotropic_ <=> rhs.isotropic_; c != 0) return c;
    return lhs.code_ <=> rhs.code_;
  }

 private:
  ClassIndex(bool isotropic, std::uint32_t code) : isotropic_(isotropic), code_(code) {}

  bool isotropic_;
  std::uint32_t code_;
};

/// The ordered index set: F_q, or F_q plus the isotropic class when the
/// field is 1 mod 4 and the null cone is split. Dense positions follow the
/// canonical order, so a finite class sits at its element code and the
/// isotropic class at position q.
class ClassScheme {
 public:
  explicit ClassScheme(Field field, NullCircle mode = NullCircle::Split);

  const Field& field() const noexcept { return field_; }
  NullCircle mode() const noexcept { return mode_; }
  bool has_isotropic() const noexcept { return has_isotropic_; }
  std::size_t size() const noexcept { return field_.order() + (has_isotropic_ ? 1 : 0); }

  bool contains(const ClassIndex& idx) const noexcept;
  /// Throws IndexInvalid for labels outside the index set.
  std::size_t position(const ClassIndex& idx) const;
  ClassIndex at(std::size_t position) const;
  std::vector<ClassIndex> indices() const;
  /// Human/CSV label: the integer for prime fields, "[c0,c1,...]" otherwise,
  /// "iso" for the isotropic class.
  std::string label(const ClassIndex& idx) const;
  std::string label_at(std::size_t position) const { return label(at(position)); }

  friend bool operator==(const ClassScheme& lhs, const ClassScheme& rhs) noexcept {
    return lhs.field_ == rhs.field_ && lhs.has_isotropic_ == rhs.has_isotropic_;
  }

 private:
  Field field_;
  NullCircle mode_;
  bool has_isotropic_;
};

/// Q^{a,b}(A1, A2). Throws FieldMismatch if the points are over another field.
FieldElement quadrance(const Point& a1, const Point& a2, const ConicParams& params);

/// Class of P relative to the origin.
ClassIndex classify(const Point& point, const ConicParams& params,
                    NullCircle mode = NullCircle::Split);

/// Every point of the class, in (x, y) order, by scanning GF(q)^2.
/// Throws CapExceeded above `cap`.
std::vector<Point> circle_points(const ClassIndex& idx, const ConicParams& params,
                                 NullCircle mode = NullCircle::Split,
                                 std::uint32_t cap = kDefaultOracleCap);

/// Closed-form number of points in the class.
std::int64_t class_size(const ClassIndex& idx, const ConicParams& params,
                        NullCircle mode = NullCircle::Split);

/// (2ij + 2jk + 2ki - i^2 - j^2 - k^2) / 4 = ij - (i + j - k)^2 / 4.
FieldElement f_discriminant(const FieldElement& i, const FieldElement& j, const FieldElement& k);

/// Number of points shared by a circle of quadrance i about X and one of
/// quadrance j about Y, where Q(X, Y) = k: 0, 1 or 2 as f(i, j, k) is a
/// non-square, zero, or a nonzero square. Throws ZeroQuadranceArg if any of
/// i, j, k is zero.
int intersection_count(const FieldElement& i, const FieldElement& j, const FieldElement& k,
                       const ConicParams& params);

/// Dense class position of every point, indexed by x_code * q + y_code.
std::vector<std::uint32_t> class_position_map(const ConicParams& params, const ClassScheme& scheme);

}  // namespace conicwalk
