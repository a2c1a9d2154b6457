#pragma once

// Brute-force references used by the tests. Nothing here calls the column
// reduction or homology code of the library.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rfh/chain_complex.hpp"
#include "rfh/exact_sequences.hpp"

namespace oracle {

using Dense = std::vector<std::vector<std::uint8_t>>;  // rows of 0/1

inline Dense dense(const rfh::f2::F2SparseMatrix& m) {
  Dense d(m.rows(), std::vector<std::uint8_t>(m.cols(), 0));
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (auto i : m.column(j).support()) d[i][j] = 1;
  }
  return d;
}

// Gaussian elimination on a copy.
inline std::size_t rank(Dense a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && !a[p][c]) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i != r && a[i][c]) {
        for (std::size_t k = c; k < cols; ++k) a[i][k] ^= a[r][k];
      }
    }
    ++r;
  }
  return r;
}

inline std::vector<std::uint8_t> multiply(const Dense& a, const std::vector<std::uint8_t>& x) {
  std::vector<std::uint8_t> y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) y[i] ^= static_cast<std::uint8_t>(a[i][j] & x[j]);
  }
  return y;
}

// Exhaustive search over all 2^cols vectors (cols <= 16).
inline bool solvable(const Dense& a, const std::vector<std::uint8_t>& b, std::size_t cols) {
  for (std::uint32_t mask = 0; mask < (1u << cols); ++mask) {
    std::vector<std::uint8_t> x(cols);
    for (std::size_t j = 0; j < cols; ++j) x[j] = (mask >> j) & 1u;
    if (multiply(a, x) == b) return true;
  }
  return false;
}

inline std::size_t boundary_rank(const rfh::GradedF2Complex& c, int k) {
  if (k < c.min_degree() || k > c.max_degree()) return 0;
  return rank(dense(c.boundary(k)));
}

// b_k = dim C_k - rank d_k - rank d_{k+1}.
inline std::map<int, std::size_t> betti(const rfh::GradedF2Complex& c) {
  std::map<int, std::size_t> out;
  for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
    out[k] = c.dim(k) - boundary_rank(c, k) - boundary_rank(c, k + 1);
  }
  return out;
}

// Complex built as a sum of points and cancelling pairs, then hidden by
// random elementary changes of basis. Its Betti numbers are known.
struct PlantedComplex {
  rfh::GradedF2Complex complex;
  std::map<int, std::size_t> betti;
};

struct Plant {
  std::map<int, std::vector<std::string>> ids;
  std::map<std::string, std::set<std::string>> d;
  std::map<int, std::size_t> betti;
  int lo = 0;
  int hi = 0;

  std::string add(int k, const std::string& prefix) {
    std::string id = prefix + std::to_string(k) + "_" + std::to_string(ids[k].size());
    ids[k].push_back(id);
    return id;
  }

  static void toggle(std::set<std::string>& s, const std::string& x) {
    if (!s.erase(x)) s.insert(x);
  }

  // New basis vector a + b for a, b in the same degree.
  void move(const std::string& a, const std::string& b) {
    const std::set<std::string> db = d[b];
    for (auto& [x, s] : d) {
      if (s.count(a)) toggle(s, b);
    }
    for (const auto& t : db) toggle(d[a], t);
  }

  rfh::GradedF2Complex build() const {
    rfh::GradedF2Complex::Builder builder;
    builder.window(lo, hi);
    for (const auto& [k, list] : ids) {
      for (const auto& id : list) builder.add_generator(id, k);
    }
    for (const auto& [x, s] : d) {
      if (!s.empty()) builder.set_boundary(x, {s.begin(), s.end()});
    }
    return builder.build();
  }
};

inline PlantedComplex planted_complex(std::mt19937_64& rng, int lo, int hi, std::size_t max_gens,
                                      const std::string& prefix = "c") {
  auto pick = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  Plant p;
  p.lo = lo;
  p.hi = hi;
  std::size_t total = 0;
  while (total + 2 <= max_gens && pick(0, 5) != 0) {
    if (pick(0, 1) == 0 || lo == hi) {
      const int k = pick(lo, hi);
      p.add(k, prefix);
      ++p.betti[k];
      total += 1;
    } else {
      const int k = pick(lo + 1, hi);
      const auto top = p.add(k, prefix);
      const auto bottom = p.add(k - 1, prefix);
      p.d[top].insert(bottom);
      total += 2;
    }
  }
  for (int m = 0; m < 3 * static_cast<int>(total); ++m) {
    const int k = pick(lo, hi);
    auto& list = p.ids[k];
    if (list.size() < 2) continue;
    const auto& a = list[static_cast<std::size_t>(pick(0, static_cast<int>(list.size()) - 1))];
    const auto& b = list[static_cast<std::size_t>(pick(0, static_cast<int>(list.size()) - 1))];
    if (a != b) p.move(a, b);
  }
  PlantedComplex out{p.build(), {}};
  for (int k = lo; k <= hi; ++k) out.betti[k] = p.betti.count(k) ? p.betti.at(k) : 0;
  return out;
}

// Split sequence 0 -> X -> Y -> Y/X -> 0 with X spanned by planted pieces
// of Y. Lower halves of pairs whose upper half is outside X each contribute
// rank one to the connecting map.
struct PlantedSequence {
  rfh::SplitShortExactSequence sequence;
  std::size_t connecting_rank = 0;
  std::size_t generators = 0;
};

inline PlantedSequence planted_sequence(std::mt19937_64& rng, std::size_t max_gens) {
  auto pick = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
  const int lo = pick(-1, 0);
  const int hi = lo + pick(1, 3);
  Plant p;
  p.lo = lo;
  p.hi = hi;
  std::set<std::string> in_x;
  std::size_t total = 0;
  std::size_t connecting = 0;
  while (total + 2 <= max_gens && pick(0, 6) != 0) {
    if (pick(0, 2) == 0) {
      const auto id = p.add(pick(lo, hi), "y");
      if (pick(0, 1)) in_x.insert(id);
      total += 1;
    } else {
      const int k = pick(lo + 1, hi);
      const auto top = p.add(k, "y");
      const auto bottom = p.add(k - 1, "y");
      p.d[top].insert(bottom);
      switch (pick(0, 2)) {
        case 0: break;
        case 1:
          in_x.insert(top);
          in_x.insert(bottom);
          break;
        default:
          in_x.insert(bottom);
          ++connecting;
      }
      total += 2;
    }
  }
  // Basis changes keep span(X): an X vector only absorbs X vectors.
  for (int m = 0; m < 3 * static_cast<int>(total); ++m) {
    const int k = pick(lo, hi);
    auto& list = p.ids[k];
    if (list.size() < 2) continue;
    const auto& a = list[static_cast<std::size_t>(pick(0, static_cast<int>(list.size()) - 1))];
    const auto& b = list[static_cast<std::size_t>(pick(0, static_cast<int>(list.size()) - 1))];
    if (a == b || (in_x.count(a) && !in_x.count(b))) continue;
    p.move(a, b);
  }

  auto y = rfh::share(p.build());
  rfh::GradedF2Complex::Builder xb;
  rfh::GradedF2Complex::Builder zb;
  xb.window(lo, hi);
  zb.window(lo, hi);
  for (int k = lo; k <= hi; ++k) {
    for (const auto& id : y->ids(k)) (in_x.count(id) ? xb : zb).add_generator(id, k);
  }
  for (int k = lo; k <= hi; ++k) {
    for (const auto& id : y->ids(k)) {
      std::vector<std::string> bx;
      std::vector<std::string> bz;
      for (const auto& t : y->boundary_of(id)) (in_x.count(t) ? bx : bz).push_back(t);
      if (in_x.count(id)) {
        if (!bx.empty()) xb.set_boundary(id, bx);
      } else if (!bz.empty()) {
        zb.set_boundary(id, bz);
      }
    }
  }
  auto x = rfh::share(xb.build());
  auto z = rfh::share(zb.build());
  std::map<std::string, std::vector<std::string>> incl;
  std::map<std::string, std::vector<std::string>> proj;
  std::map<std::string, std::vector<std::string>> proj_x;
  std::map<std::string, std::vector<std::string>> lift;
  for (int k = lo; k <= hi; ++k) {
    for (const auto& id : y->ids(k)) {
      if (in_x.count(id)) {
        incl[id] = {id};
        proj_x[id] = {id};
      } else {
        proj[id] = {id};
        lift[id] = {id};
      }
    }
  }
  PlantedSequence out{{rfh::GradedMap::from_images(x, y, 0, incl), rfh::GradedMap::from_images(y, z, 0, proj),
                       rfh::GradedMap::from_images(y, x, 0, proj_x), rfh::GradedMap::from_images(z, y, 0, lift)},
                      connecting,
                      total};
  return out;
}

// Cellular chains of RP^3 with integer boundary (0, 2, 0) reduced mod 2.
inline rfh::GradedF2Complex rp3_cw() {
  rfh::GradedF2Complex::Builder b;
  const int integer_boundary[4] = {0, 0, 2, 0};  // d e_k = integer_boundary[k] e_{k-1}
  for (int k = 0; k <= 3; ++k) b.add_generator("e" + std::to_string(k), k);
  for (int k = 1; k <= 3; ++k) {
    if (integer_boundary[k] % 2) b.set_boundary("e" + std::to_string(k), {"e" + std::to_string(k - 1)});
  }
  return b.build();
}

// T^3 as the tensor product of three triangulated circles (3 vertices, 3
// edges each); mod 2 the Leibniz rule needs no signs.
inline rfh::GradedF2Complex t3_cubical() {
  struct Cell {
    int dim;
    int index;
  };
  auto circle_boundary = [](const Cell& c) {
    std::vector<Cell> out;
    if (c.dim == 1) {
      out.push_back({0, c.index});
      out.push_back({0, (c.index + 1) % 3});
    }
    return out;
  };
  auto name = [](const Cell (&cells)[3]) {
    std::string s = "c";
    for (const auto& c : cells) s += (c.dim ? "e" : "v") + std::to_string(c.index);
    return s;
  };
  rfh::GradedF2Complex::Builder b;
  std::vector<std::pair<std::string, std::vector<std::string>>> boundaries;
  for (int code = 0; code < 216; ++code) {
    Cell cells[3];
    int rest = code;
    for (auto& c : cells) {
      const int v = rest % 6;
      rest /= 6;
      c = {v / 3, v % 3};
    }
    const int dim = cells[0].dim + cells[1].dim + cells[2].dim;
    b.add_generator(name(cells), dim);
    std::map<std::string, int> terms;
    for (int f = 0; f < 3; ++f) {
      for (const auto& face : circle_boundary(cells[f])) {
        Cell next[3] = {cells[0], cells[1], cells[2]};
        next[f] = face;
        terms[name(next)] ^= 1;
      }
    }
    std::vector<std::string> bd;
    for (const auto& [t, odd] : terms) {
      if (odd) bd.push_back(t);
    }
    boundaries.emplace_back(name(cells), bd);
  }
  for (const auto& [id, bd] : boundaries) {
    if (!bd.empty()) b.set_boundary(id, bd);
  }
  return b.build();
}

}  // namespace oracle
