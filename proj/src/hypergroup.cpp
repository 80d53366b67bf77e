#include "conicwalk/hypergroup.hpp"

#include <string>

#include "conicwalk/error.hpp"

namespace conicwalk {

namespace {

Rational trichotomy(int chi, std::int64_t denominator) { return Rational(chi + 1, denominator); }

FieldElement literal_discriminant(const FieldElement& i, const FieldElement& j,
                                  const FieldElement& k) {
  const FieldElement one(i.field_data(), 1);
  const FieldElement four = one + one + one + one;
  const FieldElement t = i - j - k;
  return i * j - t * t / four;
}

std::vector<std::int64_t> closed_form_sizes(const ConicParams& params, const ClassScheme& scheme) {
  std::vector<std::int64_t> sizes;
  sizes.reserve(scheme.size());
  for (const auto& idx : scheme.indices()) sizes.push_back(class_size(idx, params, scheme.mode()));
  return sizes;
}

std::string triple_label(const ClassScheme& s, std::size_t i, std::size_t j, std::size_t k) {
  return "n[" + s.label_at(i) + "," + s.label_at(j) + "][" + s.label_at(k) + "]";
}

}  // namespace

std::string_view source_name(TableSource source) noexcept {
  switch (source) {
    case TableSource::ClosedForm: return "closed-form";
    case TableSource::Oracle: return "oracle";
    case TableSource::AsStated: return "as-stated";
  }
  return "unknown";
}

StructureTable::StructureTable(ConicParams params, ClassScheme scheme, TableSource source,
                               std::vector<std::int64_t> class_sizes, std::vector<Rational> entries)
    : params_(std::move(params)),
      scheme_(std::move(scheme)),
      source_(source),
      n_(scheme_.size()),
      sizes_(std::move(class_sizes)),
      entries_(std::move(entries)) {
  if (sizes_.size() != n_ || entries_.size() != n_ * n_ * n_) {
    throw Error(Errc::IndexMismatch, "structure table dimensions disagree with its index set");
  }
}

const Rational& StructureTable::at(const ClassIndex& i, const ClassIndex& j,
                                   const ClassIndex& k) const {
  return at(scheme_.position(i), scheme_.position(j), scheme_.position(k));
}

StructureTable oracle_table(const ConicParams& params, NullCircle mode, std::uint32_t cap) {
  const Field& f = params.field();
  const std::uint32_t q = f.order();
  if (q > cap) {
    throw Error(Errc::CapExceeded,
                "q = " + std::to_string(q) + " exceeds the oracle cap " + std::to_string(cap));
  }
  ClassScheme scheme(f, mode);
  const std::size_t n = scheme.size();
  const auto pos = class_position_map(params, scheme);

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> members(n);
  for (std::uint32_t x = 0; x < q; ++x) {
    for (std::uint32_t y = 0; y < q; ++y) {
      members[pos[static_cast<std::size_t>(x) * q + y]].emplace_back(x, y);
    }
  }
  std::vector<std::int64_t> sizes(n);
  for (std::size_t c = 0; c < n; ++c) sizes[c] = static_cast<std::int64_t>(members[c].size());

  std::vector<Rational> entries(n * n * n);
  std::vector<std::int64_t> counts(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::fill(counts.begin(), counts.end(), 0);
      for (const auto& [ux, uy] : members[i]) {
        for (const auto& [vx, vy] : members[j]) {
          ++counts[pos[static_cast<std::size_t>(f.add(ux, vx)) * q + f.add(uy, vy)]];
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        entries[(i * n + j) * n + k] = Rational(counts[k], sizes[i] * sizes[j]);
      }
    }
  }
  return StructureTable(params, std::move(scheme), TableSource::Oracle, std::move(sizes),
                        std::move(entries));
}

Rational structure_constant(const ClassIndex& i, const ClassIndex& j, const ClassIndex& k,
                            const ConicParams& params) {
  const Field& f = params.field();
  const ClassScheme scheme(f);
  for (const auto* idx : {&i, &j, &k}) scheme.position(*idx);
  const std::int64_t q = f.order();

  if (i.is_origin()) return Rational(j == k ? 1 : 0);
  if (j.is_origin()) return Rational(i == k ? 1 : 0);

  if (!f.is_one_mod_four()) {
    const auto disc = f_discriminant(i.value(f), j.value(f), k.value(f));
    return trichotomy(quadratic_character(disc), q + 1);
  }

  if (!i.is_isotropic() && !j.is_isotropic()) {
    if (k.is_origin()) return Rational(i == j ? 1 : 0, q - 1);
    if (k.is_isotropic()) return Rational(i == j ? 0 : 2, q - 1);
    const auto disc = f_discriminant(i.value(f), j.value(f), k.value(f));
    return trichotomy(quadratic_character(disc), q - 1);
  }
  if (i.is_isotropic() && j.is_isotropic()) {
    return k.is_isotropic() ? Rational(q - 2, 2 * (q - 1)) : Rational(1, 2 * (q - 1));
  }
  // One isotropic factor, one nonzero finite factor m: uniform over every
  // class except the origin and m itself.
  const ClassIndex& m = i.is_isotropic() ? j : i;
  if (k.is_origin() || k == m) return Rational(0);
  return Rational(1, q - 1);
}

Rational structure_constant_as_stated(const ClassIndex& i, const ClassIndex& j,
                                      const ClassIndex& k, const ConicParams& params) {
  const Field& f = params.field();
  const ClassScheme scheme(f);
  for (const auto* idx : {&i, &j, &k}) scheme.position(*idx);
  const std::int64_t q = f.order();

  if (i.is_origin()) return Rational(j == k ? 1 : 0);
  if (j.is_origin()) return Rational(i == k ? 1 : 0);

  if (!f.is_one_mod_four()) {
    const auto disc = literal_discriminant(i.value(f), j.value(f), k.value(f));
    return trichotomy(quadratic_character(disc), q + 1);
  }
  if (!i.is_isotropic() && !j.is_isotropic()) {
    if (k.is_origin()) return Rational(i == j ? 1 : 0, q - 1);
    if (k.is_isotropic()) return Rational(i == j ? 0 : 2, q - 1);
    const auto disc = literal_discriminant(i.value(f), j.value(f), k.value(f));
    return trichotomy(quadratic_character(disc), q - 1);
  }
  if (i.is_isotropic() && j.is_isotropic()) {
    return k.is_isotropic() ? Rational(q - 2, 2 * (q - 1)) : Rational(1, 2 * (q - 1));
  }
  const ClassIndex& m = i.is_isotropic() ? j : i;
  return Rational(k == m ? 0 : 1, q - 1);
}

StructureTable merge_null_circle(const StructureTable& split) {
  const ClassScheme& from = split.scheme();
  const ClassScheme to(from.field(), NullCircle::Unsplit);
  const std::size_t n = from.size();
  const std::size_t m = to.size();
  const auto target = [&](std::size_t p) { return p < m ? p : std::size_t{0}; };

  std::vector<std::int64_t> sizes(m, 0);
  for (std::size_t p = 0; p < n; ++p) sizes[target(p)] += split.class_sizes()[p];

  // Work with pair counts N_{ij}^k, which add under unions of classes.
  std::vector<Rational> counts(m * m * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational pairs(split.class_sizes()[i] * split.class_sizes()[j]);
      for (std::size_t k = 0; k < n; ++k) {
        counts[(target(i) * m + target(j)) * m + target(k)] += split.at(i, j, k) * pairs;
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Rational pairs(sizes[i] * sizes[j]);
      for (std::size_t k = 0; k < m; ++k) counts[(i * m + j) * m + k] /= pairs;
    }
  }
  return StructureTable(split.params(), to, split.source(), std::move(sizes), std::move(counts));
}

StructureTable build_table(const ConicParams& params, TableSource source, NullCircle mode,
                           std::uint32_t oracle_cap) {
  if (source == TableSource::Oracle) return oracle_table(params, mode, oracle_cap);
  if (mode == NullCircle::Unsplit) {
    if (source == TableSource::AsStated) {
      throw Error(Errc::InvalidArgument, "as-stated constants exist only for the split index set");
    }
    return merge_null_circle(build_table(params, source, NullCircle::Split));
  }
  ClassScheme scheme(params.field());
  const std::size_t n = scheme.size();
  const auto indices = scheme.indices();
  std::vector<Rational> entries(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        entries[(i * n + j) * n + k] =
            source == TableSource::ClosedForm
                ? structure_constant(indices[i], indices[j], indices[k], params)
                : structure_constant_as_stated(indices[i], indices[j], indices[k], params);
      }
    }
  }
  auto sizes = closed_form_sizes(params, scheme);
  return StructureTable(params, std::move(scheme), source, std::move(sizes), std::move(entries));
}

std::vector<TableMismatch> compare_tables(const StructureTable& lhs, const StructureTable& rhs) {
  if (!(lhs.scheme() == rhs.scheme())) {
    throw Error(Errc::IndexMismatch, "tables are indexed by different class sets");
  }
  std::vector<TableMismatch> out;
  const std::size_t n = lhs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (lhs.at(i, j, k) != rhs.at(i, j, k)) {
          out.push_back({i, j, k, lhs.at(i, j, k), rhs.at(i, j, k)});
        }
      }
    }
  }
  return out;
}

bool AxiomReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const AxiomCheck& AxiomReport::check(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(Errc::InvalidArgument, "no axiom check named " + std::string(name));
}

AxiomReport verify_axioms(const StructureTable& table) {
  const std::size_t n = table.size();
  AxiomCheck positivity{"positivity", true, {}};
  AxiomCheck normalization{"normalization", true, {}};
  AxiomCheck hermitian{"hermitian", true, {}};
  AxiomCheck commutativity{"commutativity", true, {}};
  AxiomCheck identity{"identity", true, {}};
  const auto fail = [](AxiomCheck& c, AxiomViolation v) {
    c.passed = false;
    c.violations.push_back(v);
  };
  const Rational zero(0);
  const Rational one(1);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational sum;
      for (std::size_t k = 0; k < n; ++k) {
        const Rational& v = table.at(i, j, k);
        if (v < zero) fail(positivity, {i, j, k});
        if (v != table.at(j, i, k)) fail(commutativity, {i, j, k});
        sum += v;
      }
      if (sum != one) fail(normalization, {i, j, std::nullopt});
      if ((table.at(i, j, 0) > zero) != (i == j)) fail(hermitian, {i, j, std::size_t{0}});
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (table.at(0, j, k) != Rational(j == k ? 1 : 0)) fail(identity, {0, j, k});
    }
  }
  return AxiomReport{{positivity, normalization, hermitian, commutativity, identity}};
}

std::optional<ClassIndex> two_step_support(const ClassIndex& i, const ClassIndex& j,
                                           const StructureTable& table, const ClassIndex& step) {
  if (i.is_origin() || j.is_origin()) {
    throw Error(Errc::InvalidArgument, "two-step support is defined for non-origin classes");
  }
  const ClassScheme& s = table.scheme();
  const std::size_t pi = s.position(i);
  const std::size_t pj = s.position(j);
  const std::size_t ps = s.position(step);
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (!table.at(pi, ps, k).is_zero() && !table.at(k, ps, pj).is_zero()) return s.at(k);
  }
  return std::nullopt;
}

std::vector<Erratum> structure_errata(const ConicParams& params, std::uint32_t cap) {
  const Field& f = params.field();
  const StructureTable oracle = oracle_table(params, NullCircle::Split, cap);
  const StructureTable stated = build_table(params, TableSource::AsStated);
  const ClassScheme& s = oracle.scheme();
  const std::uint32_t q = f.order();
  std::vector<Erratum> out;

  // Measured intersection counts p = n_{ij}^k N_i N_j / N_k for nonzero
  // finite i, j, k, against both discriminant forms.
  std::size_t triples = 0;
  std::size_t literal_misses = 0;
  std::size_t symmetric_misses = 0;
  for (std::uint32_t i = 1; i < q; ++i) {
    for (std::uint32_t j = 1; j < q; ++j) {
      for (std::uint32_t k = 1; k < q; ++k) {
        const Rational measured = oracle.at(i, j, k) *
                                  Rational(oracle.class_sizes()[i] * oracle.class_sizes()[j]) /
                                  Rational(oracle.class_sizes()[k]);
        const auto fi = f.element(i);
        const auto fj = f.element(j);
        const auto fk = f.element(k);
        ++triples;
        if (measured != Rational(quadratic_character(literal_discriminant(fi, fj, fk)) + 1)) {
          ++literal_misses;
        }
        if (measured != Rational(quadratic_character(f_discriminant(fi, fj, fk)) + 1)) {
          ++symmetric_misses;
        }
      }
    }
  }
  if (literal_misses > 0) {
    out.push_back({"intersection discriminant f(i,j,k)",
                   "ij - (i-j-k)^2/4: " + std::to_string(literal_misses) + " of " +
                       std::to_string(triples) + " triples disagree with enumeration",
                   "ij - (i+j-k)^2/4: " + std::to_string(symmetric_misses) + " of " +
                       std::to_string(triples) + " triples disagree with enumeration"});
  }

  for (const auto& mm : compare_tables(stated, oracle)) {
    out.push_back({triple_label(s, mm.i, mm.j, mm.k), mm.lhs.to_string(), mm.rhs.to_string()});
  }
  return out;
}

}  // namespace conicwalk
