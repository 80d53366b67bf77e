#pragma once

// Brute-force reference implementations used to cross-check the library.
// Arithmetic here is deliberately naive and shares no code with src/.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

// GF(p^d) as coefficient vectors, element code sum c_i p^i, reduction by
// a monic modulus given low-to-high.
struct MiniField {
  int p = 0;
  int d = 1;
  int q = 0;
  std::vector<int> modulus;
  std::vector<int> squares;  // squares[x] = 1 if x is a nonzero square

  MiniField(int p_, std::vector<int> modulus_) : p(p_), d(static_cast<int>(modulus_.size()) - 1), modulus(std::move(modulus_)) {
    q = 1;
    for (int i = 0; i < d; ++i) q *= p;
    squares.assign(static_cast<std::size_t>(q), 0);
    for (int x = 1; x < q; ++x) squares[static_cast<std::size_t>(mul(x, x))] = 1;
  }

  std::vector<int> digits(int x) const {
    std::vector<int> c(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      c[static_cast<std::size_t>(i)] = x % p;
      x /= p;
    }
    return c;
  }
  int code(const std::vector<int>& c) const {
    int x = 0;
    for (int i = d; i-- > 0;) x = x * p + ((c[static_cast<std::size_t>(i)] % p) + p) % p;
    return x;
  }
  int add(int x, int y) const {
    auto a = digits(x), b = digits(y);
    for (int i = 0; i < d; ++i) a[static_cast<std::size_t>(i)] += b[static_cast<std::size_t>(i)];
    return code(a);
  }
  int neg(int x) const {
    auto a = digits(x);
    for (auto& v : a) v = -v;
    return code(a);
  }
  int sub(int x, int y) const { return add(x, neg(y)); }
  int mul(int x, int y) const {
    const auto a = digits(x), b = digits(y);
    std::vector<int> prod(static_cast<std::size_t>(2 * d), 0);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        auto& slot = prod[static_cast<std::size_t>(i + j)];
        slot = (slot + a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]) % p;
      }
    }
    for (int top = 2 * d - 1; top >= d; --top) {
      const int lead = prod[static_cast<std::size_t>(top)];
      if (lead == 0) continue;
      for (int i = 0; i <= d; ++i) {
        auto& slot = prod[static_cast<std::size_t>(top - d + i)];
        slot = ((slot - lead * modulus[static_cast<std::size_t>(i)]) % p + p) % p;
      }
    }
    prod.resize(static_cast<std::size_t>(d));
    return code(prod);
  }
  int from_int(long v) const { return static_cast<int>(((v % p) + p) % p); }
  int chi(int x) const { return x == 0 ? 0 : (squares[static_cast<std::size_t>(x)] ? 1 : -1); }
  int inv(int x) const {
    for (int y = 1; y < q; ++y) {
      if (mul(x, y) == 1) return y;
    }
    throw std::domain_error("zero has no inverse");
  }
};

// True when the monic polynomial has no root; enough for degree <= 3.
inline bool rootless(int p, const std::vector<int>& poly) {
  for (int x = 0; x < p; ++x) {
    long acc = 0;
    for (std::size_t i = poly.size(); i-- > 0;) acc = (acc * x + poly[i]) % p;
    if (acc == 0) return false;
  }
  return true;
}

struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;
  static Frac make(std::int64_t n, std::int64_t d) {
    const auto g = std::gcd(n, d);
    return g == 0 ? Frac{0, 1} : Frac{n / g, d / g};
  }
};

// Origin-centred classes with the null cone split: position x for nonzero
// quadrance code x, 0 for the origin, q for other null points.
struct ClassMap {
  int q = 0;
  bool has_iso = false;
  std::vector<int> position;  // indexed x * q + y
  std::vector<std::int64_t> sizes;

  ClassMap(const MiniField& f, int a, int b) : q(f.q) {
    position.resize(static_cast<std::size_t>(q * q));
    for (int x = 0; x < q; ++x) {
      for (int y = 0; y < q; ++y) {
        const int quad = f.add(f.mul(a, f.mul(x, x)), f.mul(b, f.mul(y, y)));
        int pos = quad;
        if (quad == 0 && (x != 0 || y != 0)) {
          pos = q;
          has_iso = true;
        }
        position[static_cast<std::size_t>(x * q + y)] = pos;
      }
    }
    sizes.assign(static_cast<std::size_t>(count()), 0);
    for (int pos : position) ++sizes[static_cast<std::size_t>(pos)];
  }
  int count() const { return has_iso ? q + 1 : q; }
};

// n_{ij}^k by enumerating all q^4 pairs of points.
inline std::vector<Frac> structure_table(const MiniField& f, const ClassMap& cm) {
  const int q = f.q;
  const int n = cm.count();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n * n * n), 0);
  for (int ux = 0; ux < q; ++ux) {
    for (int uy = 0; uy < q; ++uy) {
      const int i = cm.position[static_cast<std::size_t>(ux * q + uy)];
      for (int vx = 0; vx < q; ++vx) {
        const int sx = f.add(ux, vx);
        for (int vy = 0; vy < q; ++vy) {
          const int j = cm.position[static_cast<std::size_t>(vx * q + vy)];
          const int k = cm.position[static_cast<std::size_t>(sx * q + f.add(uy, vy))];
          ++counts[static_cast<std::size_t>((i * n + j) * n + k)];
        }
      }
    }
  }
  std::vector<Frac> out(counts.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const auto idx = static_cast<std::size_t>((i * n + j) * n + k);
        out[idx] = Frac::make(counts[idx], cm.sizes[static_cast<std::size_t>(i)] * cm.sizes[static_cast<std::size_t>(j)]);
      }
    }
  }
  return out;
}

// Largest |mu(A) - nu(A)| over all subsets A.
inline double tv_by_subsets(const std::vector<double>& mu, const std::vector<double>& nu) {
  const std::size_t n = mu.size();
  if (n > 20) throw std::length_error("too many states for subset enumeration");
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) gap += mu[i] - nu[i];
    }
    best = std::max(best, std::abs(gap));
  }
  return best;
}

// Row-vector times matrix, repeated.
inline std::vector<double> step_distribution(std::vector<double> d, const std::vector<double>& k, std::size_t steps) {
  const std::size_t n = d.size();
  for (std::size_t s = 0; s < steps; ++s) {
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) next[j] += d[i] * k[i * n + j];
    }
    d = std::move(next);
  }
  return d;
}

}  // namespace oracle
