#include "conicwalk/conic_geometry.hpp"

#include <string>

#include "conicwalk/error.hpp"

namespace conicwalk {

namespace {

void require_in_field(const Field& field, const FieldElement& x, const char* what) {
  if (x.field_data() != field.data()) {
    throw Error(Errc::FieldMismatch, std::string(what) + " is not an element of the conic's field");
  }
}

std::uint32_t quadrance_code(const Field& f, std::uint32_t a, std::uint32_t b, std::uint32_t dx,
                             std::uint32_t dy) {
  return f.add(f.mul(a, f.mul(dx, dx)), f.mul(b, f.mul(dy, dy)));
}

}  // namespace

ConicParams ConicParams::from_ab(const Field& field, const FieldElement& a, const FieldElement& b) {
  require_in_field(field, a, "a");
  require_in_field(field, b, "b");
  if (a.is_zero() || b.is_zero()) throw Error(Errc::InvalidConic, "a and b must be nonzero");
  const auto c = sqrt(a * b);
  if (!c) throw Error(Errc::InvalidConic, "ab must be a square in the field");
  return ConicParams(field, a, b, *c);
}

ConicParams ConicParams::from_abc(const Field& field, const FieldElement& a, const FieldElement& b,
                                  const FieldElement& c) {
  require_in_field(field, a, "a");
  require_in_field(field, b, "b");
  require_in_field(field, c, "c");
  if (a.is_zero() || b.is_zero() || c.is_zero()) {
    throw Error(Errc::InvalidConic, "a, b and c must be nonzero");
  }
  if (a * b != c * c) throw Error(Errc::InvalidConic, "ab must equal c^2");
  return ConicParams(field, a, b, c);
}

ConicParams ConicParams::unit(const Field& field) {
  return ConicParams(field, field.one(), field.one(), field.one());
}

ClassIndex ClassIndex::isotropic(const Field& field) {
  if (!field.is_one_mod_four()) {
    throw Error(Errc::IndexInvalid, "the isotropic class exists only for q = 1 mod 4");
  }
  return ClassIndex(true, 0);
}

FieldElement ClassIndex::value(const Field& field) const {
  if (isotropic_) throw Error(Errc::IndexInvalid, "isotropic class has no field value");
  return field.element(code_);
}

ClassScheme::ClassScheme(Field field, NullCircle mode)
    : field_(std::move(field)),
      mode_(mode),
      has_isotropic_(field_.is_one_mod_four() && mode == NullCircle::Split) {}

bool ClassScheme::contains(const ClassIndex& idx) const noexcept {
  return idx.is_isotropic() ? has_isotropic_ : idx.code() < field_.order();
}

std::size_t ClassScheme::position(const ClassIndex& idx) const {
  if (!contains(idx)) throw Error(Errc::IndexInvalid, "class index outside the index set");
  return idx.is_isotropic() ? field_.order() : idx.code();
}

ClassIndex ClassScheme::at(std::size_t position) const {
  if (position < field_.order()) return ClassIndex::finite_code(static_cast<std::uint32_t>(position));
  if (position == field_.order() && has_isotropic_) return ClassIndex::isotropic(field_);
  throw Error(Errc::IndexInvalid, "class position " + std::to_string(position) + " out of range");
}

std::vector<ClassIndex> ClassScheme::indices() const {
  std::vector<ClassIndex> out;
  out.reserve(size());
  for (std::size_t pos = 0; pos < size(); ++pos) out.push_back(at(pos));
  return out;
}

std::string ClassScheme::label(const ClassIndex& idx) const {
  if (idx.is_isotropic()) return "iso";
  if (field_.degree() == 1) return std::to_string(idx.code());
  std::string out = "[";
  const auto coeffs = field_.element(idx.code()).coefficients();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(coeffs[i]);
  }
  return out + "]";
}

FieldElement quadrance(const Point& a1, const Point& a2, const ConicParams& params) {
  const Field& f = params.field();
  for (const Point* pt : {&a1, &a2}) {
    require_in_field(f, pt->x, "point coordinate");
    require_in_field(f, pt->y, "point coordinate");
  }
  const FieldElement dx = a2.x - a1.x;
  const FieldElement dy = a2.y - a1.y;
  return params.a() * dx * dx + params.b() * dy * dy;
}

ClassIndex classify(const Point& point, const ConicParams& params, NullCircle mode) {
  const Field& f = params.field();
  const FieldElement value = quadrance(Point{f.zero(), f.zero()}, point, params);
  if (!value.is_zero() || !f.is_one_mod_four() || mode == NullCircle::Unsplit) {
    return ClassIndex::finite(value);
  }
  if (point.x.is_zero() && point.y.is_zero()) return ClassIndex::finite(value);
  return ClassIndex::isotropic(f);
}

std::vector<std::uint32_t> class_position_map(const ConicParams& params, const ClassScheme& scheme) {
  const Field& f = params.field();
  const std::uint32_t q = f.order();
  const std::uint32_t a = params.a().code();
  const std::uint32_t b = params.b().code();
  std::vector<std::uint32_t> pos(static_cast<std::size_t>(q) * q);
  for (std::uint32_t x = 0; x < q; ++x) {
    for (std::uint32_t y = 0; y < q; ++y) {
      std::uint32_t c = quadrance_code(f, a, b, x, y);
      if (c == 0 && scheme.has_isotropic() && (x != 0 || y != 0)) c = q;
      pos[static_cast<std::size_t>(x) * q + y] = c;
    }
  }
  return pos;
}

std::vector<Point> circle_points(const ClassIndex& idx, const ConicParams& params, NullCircle mode,
                                 std::uint32_t cap) {
  const Field& f = params.field();
  if (f.order() > cap) {
    throw Error(Errc::CapExceeded, "q = " + std::to_string(f.order()) +
                                       " exceeds the enumeration cap " + std::to_string(cap));
  }
  const ClassScheme scheme(f, mode);
  const std::size_t target = scheme.position(idx);
  const auto pos = class_position_map(params, scheme);
  const std::uint32_t q = f.order();
  std::vector<Point> out;
  for (std::uint32_t x = 0; x < q; ++x) {
    for (std::uint32_t y = 0; y < q; ++y) {
      if (pos[static_cast<std::size_t>(x) * q + y] == target) {
        out.push_back(Point{f.element(x), f.element(y)});
      }
    }
  }
  return out;
}

std::int64_t class_size(const ClassIndex& idx, const ConicParams& params, NullCircle mode) {
  const Field& f = params.field();
  const ClassScheme scheme(f, mode);
  scheme.position(idx);
  const std::int64_t q = f.order();
  const bool one_mod_four = f.is_one_mod_four();
  if (idx.is_isotropic()) return 2 * (q - 1);
  if (idx.is_origin()) return (one_mod_four && mode == NullCircle::Unsplit) ? 2 * q - 1 : 1;
  return one_mod_four ? q - 1 : q + 1;
}

FieldElement f_discriminant(const FieldElement& i, const FieldElement& j, const FieldElement& k) {
  const FieldElement one(i.field_data(), 1);
  const FieldElement two = one + one;
  const FieldElement cross = two * (i * j + j * k + k * i);
  const FieldElement squares = i * i + j * j + k * k;
  return (cross - squares) / (two * two);
}

int intersection_count(const FieldElement& i, const FieldElement& j, const FieldElement& k,
                       const ConicParams& params) {
  const Field& f = params.field();
  require_in_field(f, i, "i");
  require_in_field(f, j, "j");
  require_in_field(f, k, "k");
  if (i.is_zero() || j.is_zero() || k.is_zero()) {
    throw Error(Errc::ZeroQuadranceArg, "intersection counts need nonzero i, j, k");
  }
  return quadratic_character(f_discriminant(i, j, k)) + 1;
}

}  // namespace conicwalk
