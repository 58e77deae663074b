#include "weylred/rootsys.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <set>

namespace weylred::rootsys {

IMatrix simple_reflection_of(const RootSystem& rs, int i);

Series parse_series(const std::string& s) {
  if (s.size() == 1) {
    switch (s[0]) {
      case 'A': return Series::A;
      case 'B': return Series::B;
      case 'C': return Series::C;
      case 'D': return Series::D;
      case 'E': return Series::E;
      case 'F': return Series::F;
      case 'G': return Series::G;
      default: break;
    }
  }
  throw validation_error("unknown series '" + s + "' (expected one of A,B,C,D,E,F,G)");
}

char series_char(Series s) { return static_cast<char>(s); }

IMatrix IMatrix::identity(int n) {
  IMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMatrix IMatrix::operator*(const IMatrix& rhs) const {
  IMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      int v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += v * rhs.at(k, j);
    }
  return r;
}

Coords IMatrix::apply(const Coords& v) const {
  Coords r(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i] += at(i, j) * v[j];
  return r;
}

QVec IMatrix::apply(const QVec& v) const {
  QVec r(n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (at(i, j) != 0 && !v[j].is_zero()) r[i] += Rat(at(i, j)) * v[j];
  return r;
}

bool IMatrix::is_identity() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

std::size_t IMatrixHash::operator()(const IMatrix& m) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (int v : m.a) {
    h ^= (std::size_t)(v + 128);
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

// Adjacency + symmetrizer tables per series. Edges carry the pair
// (c_ij, c_ji) with i < j in node order.
struct Blueprint {
  std::vector<int> sym;
  std::vector<std::array<int, 4>> edges; // {i, j, c_ij, c_ji}
};

Blueprint blueprint(Series s, int rank) {
  auto chain_edge = [](int i) { return std::array<int, 4>{i, i + 1, -1, -1}; };
  Blueprint b;
  switch (s) {
    case Series::A: {
      if (rank < 1) throw validation_error("type A needs rank >= 1");
      b.sym.assign(rank, 1);
      for (int i = 0; i + 1 < rank; ++i) b.edges.push_back(chain_edge(i));
      return b;
    }
    case Series::B: {
      if (rank < 2) throw validation_error("type B needs rank >= 2 (B1 is not aliased to A1)");
      b.sym.assign(rank, 2);
      b.sym[rank - 1] = 1; // last node short
      for (int i = 0; i + 2 < rank; ++i) b.edges.push_back(chain_edge(i));
      b.edges.push_back({rank - 2, rank - 1, -1, -2});
      return b;
    }
    case Series::C: {
      if (rank < 2) throw validation_error("type C needs rank >= 2 (C1 is not aliased to A1)");
      b.sym.assign(rank, 1);
      b.sym[rank - 1] = 2; // last node long
      for (int i = 0; i + 2 < rank; ++i) b.edges.push_back(chain_edge(i));
      b.edges.push_back({rank - 2, rank - 1, -2, -1});
      return b;
    }
    case Series::D: {
      if (rank < 3) throw validation_error("type D needs rank >= 3 (D2 is not aliased to A1+A1)");
      b.sym.assign(rank, 1);
      for (int i = 0; i + 3 < rank; ++i) b.edges.push_back(chain_edge(i));
      b.edges.push_back({rank - 3, rank - 2, -1, -1});
      b.edges.push_back({rank - 3, rank - 1, -1, -1});
      return b;
    }
    case Series::E: {
      if (rank < 6 || rank > 8) throw validation_error("type E needs rank in {6,7,8}");
      b.sym.assign(rank, 1);
      // Bourbaki: node 2 hangs off node 4; chain 1-3-4-5-6(-7)(-8). 0-based.
      b.edges.push_back({0, 2, -1, -1});
      b.edges.push_back({1, 3, -1, -1});
      b.edges.push_back({2, 3, -1, -1});
      for (int i = 3; i + 1 < rank; ++i) b.edges.push_back(chain_edge(i));
      return b;
    }
    case Series::F: {
      if (rank != 4) throw validation_error("type F needs rank 4");
      b.sym = {2, 2, 1, 1};
      b.edges.push_back({0, 1, -1, -1});
      b.edges.push_back({1, 2, -1, -2});
      b.edges.push_back({2, 3, -1, -1});
      return b;
    }
    case Series::G: {
      if (rank != 2) throw validation_error("type G needs rank 2");
      b.sym = {1, 3};
      b.edges.push_back({0, 1, -3, -1});
      return b;
    }
  }
  throw validation_error("unknown series");
}

} // namespace

RootSystem RootSystem::build(Series s, int rank) {
  Blueprint bp = blueprint(s, rank);
  RootSystem rs;
  rs.cartan_.series = s;
  rs.cartan_.rank = rank;
  rs.cartan_.sym = bp.sym;
  rs.cartan_.cartan.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) rs.cartan_.cartan[i][i] = 2;
  for (const auto& e : bp.edges) {
    rs.cartan_.cartan[e[0]][e[1]] = e[2];
    rs.cartan_.cartan[e[1]][e[0]] = e[3];
  }
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (bp.sym[i] * rs.cartan_.cartan[i][j] != bp.sym[j] * rs.cartan_.cartan[j][i])
        throw internal_error("Cartan matrix not symmetrizable");
  rs.finalize();
  return rs;
}

RootSystem RootSystem::build(const std::string& series, int rank) {
  return build(parse_series(series), rank);
}

std::string RootSystem::name() const {
  return std::string(1, series_char(cartan_.series)) + std::to_string(cartan_.rank);
}

std::string RootSystem::key_of(const Coords& c) {
  std::string k;
  k.reserve(c.size() * 3);
  for (int v : c) {
    k += std::to_string(v);
    k += ',';
  }
  return k;
}

bool RootSystem::coords_positive(const Coords& c) {
  bool pos = false, neg = false;
  for (int v : c) {
    if (v > 0) pos = true;
    if (v < 0) neg = true;
  }
  if (pos && neg) throw internal_error("mixed-sign coordinate vector is not a root");
  return pos;
}

void RootSystem::finalize() {
  int n = cartan_.rank;
  // close the simple roots under simple reflections
  std::set<Coords> pending;
  std::set<Coords> seen;
  for (int i = 0; i < n; ++i) {
    Coords e(n, 0);
    e[i] = 1;
    pending.insert(e);
  }
  std::vector<IMatrix> refl;
  for (int i = 0; i < n; ++i) refl.push_back(simple_reflection_of(*this, i));
  while (!pending.empty()) {
    Coords v = *pending.begin();
    pending.erase(pending.begin());
    if (!seen.insert(v).second) continue;
    for (int i = 0; i < n; ++i) {
      Coords w = refl[i].apply(v);
      if (!seen.count(w)) pending.insert(w);
    }
  }
  std::vector<Coords> pos;
  for (const auto& v : seen)
    if (coords_positive(v)) pos.push_back(v);
  std::sort(pos.begin(), pos.end(), [](const Coords& a, const Coords& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0);
    int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  roots_ = pos;
  for (const auto& v : pos) {
    Coords neg(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    roots_.push_back(neg);
  }
  for (int id = 0; id < (int)roots_.size(); ++id) root_index_[key_of(roots_[id])] = id;

  cartan_q_ = QMat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cartan_q_.at(i, j) = Rat(cartan_.cartan[i][j]);
  cartan_inv_ = cartan_q_.inverse();
}

// free helper so finalize() can build reflections before roots_ exists
IMatrix simple_reflection_of(const RootSystem& rs, int i) {
  int n = rs.rank();
  IMatrix m = IMatrix::identity(n);
  for (int j = 0; j < n; ++j) m.at(i, j) -= rs.cartan_datum().cartan[i][j];
  return m;
}

std::optional<int> RootSystem::root_id(const Coords& c) const {
  auto it = root_index_.find(key_of(c));
  if (it == root_index_.end()) return std::nullopt;
  return it->second;
}

long long RootSystem::form(const Coords& x, const Coords& y) const {
  long long acc = 0;
  int n = rank();
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < n; ++j)
      if (y[j] != 0)
        acc += (long long)x[i] * cartan_.sym[i] * cartan_.cartan[i][j] * y[j];
  }
  return acc;
}

Rat RootSystem::form(const QVec& x, const QVec& y) const {
  Rat acc(0);
  int n = rank();
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n; ++j)
      if (!y[j].is_zero())
        acc += x[i] * Rat((long long)cartan_.sym[i] * cartan_.cartan[i][j]) * y[j];
  }
  return acc;
}

long long RootSystem::coroot_pairing(const Coords& x, const Coords& beta) const {
  long long num = 2 * form(x, beta);
  long long den = form(beta, beta);
  if (den == 0) throw internal_error("coroot of an isotropic vector");
  if (num % den != 0) throw internal_error("non-integral coroot pairing on lattice vectors");
  return num / den;
}

Rat RootSystem::coroot_pairing(const QVec& x, const QVec& beta) const {
  Rat den = form(beta, beta);
  if (den.is_zero()) throw internal_error("coroot of an isotropic vector");
  return Rat(2) * form(x, beta) / den;
}

IMatrix RootSystem::simple_reflection(int i) const {
  if (i < 0 || i >= rank()) throw validation_error("simple root index out of range");
  return simple_reflection_of(*this, i);
}

IMatrix RootSystem::reflection(const Coords& beta) const {
  if (!is_root(beta)) throw validation_error("reflection requested in a non-root");
  int n = rank();
  IMatrix m = IMatrix::identity(n);
  long long bb = form(beta, beta);
  for (int j = 0; j < n; ++j) {
    Coords ej(n, 0);
    ej[j] = 1;
    long long num = 2 * form(ej, beta);
    if (num % bb != 0) throw internal_error("non-integral reflection coefficient");
    long long c = num / bb;
    for (int k = 0; k < n; ++k) m.at(k, j) -= (int)(beta[k] * c);
  }
  return m;
}

QVec RootSystem::to_weight_coords(const QVec& root_coords) const {
  return cartan_q_.apply(root_coords);
}

QVec RootSystem::from_weight_coords(const QVec& wt_coords) const {
  return cartan_inv_.apply(wt_coords);
}

QVec RootSystem::fundamental_weight(int j) const {
  QVec e(rank(), Rat(0));
  e[j] = Rat(1);
  return from_weight_coords(e);
}

int RootSystem::length(const IMatrix& w) const {
  int len = 0;
  for (int id = 0; id < num_positive(); ++id)
    if (!coords_positive(w.apply(roots_[id]))) ++len;
  return len;
}

Word RootSystem::canonical_word(IMatrix w) const {
  // Peel simple descents from the right; the smallest descent each time
  // makes the result deterministic.
  Word rev;
  int n = rank();
  while (!w.is_identity()) {
    int found = -1;
    for (int i = 0; i < n; ++i) {
      Coords e(n, 0);
      e[i] = 1;
      if (!coords_positive(w.apply(e))) { found = i; break; }
    }
    if (found < 0) throw internal_error("non-identity element with no descent");
    w = w * simple_reflection(found);
    rev.push_back((std::uint8_t)found);
  }
  return Word(rev.rbegin(), rev.rend());
}

void validate_theta(const RootSystem& rs, const std::vector<int>& theta) {
  std::set<int> seen;
  for (int i : theta) {
    if (i < 0 || i >= rs.rank())
      throw validation_error("simple-root index " + std::to_string(i + 1) + " out of range for " + rs.name());
    if (!seen.insert(i).second)
      throw validation_error("duplicate simple-root index " + std::to_string(i + 1));
  }
}

WeylElement longest_element(const RootSystem& rs, const std::vector<int>& theta) {
  validate_theta(rs, theta);
  int n = rs.rank();
  WeylElement w{IMatrix::identity(n), {}};
  std::vector<int> order(theta);
  std::sort(order.begin(), order.end());
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i : order) {
      Coords e(n, 0);
      e[i] = 1;
      if (RootSystem::coords_positive(w.mat.apply(e))) {
        w.mat = w.mat * rs.simple_reflection(i);
        w.word.push_back((std::uint8_t)i);
        moved = true;
        break;
      }
    }
  }
  return w;
}

std::vector<int> subsystem_simples(const RootSystem& rs, const std::vector<int>& positive_ids) {
  std::vector<int> simples;
  for (int beta : positive_ids) {
    IMatrix r = rs.reflection(rs.roots()[beta]);
    bool simple = true;
    for (int gamma : positive_ids) {
      if (gamma == beta) continue;
      if (!RootSystem::coords_positive(r.apply(rs.roots()[gamma]))) {
        simple = false;
        break;
      }
    }
    if (simple) simples.push_back(beta);
  }
  return simples;
}

IMatrix subsystem_longest_element(const RootSystem& rs, const std::vector<int>& root_ids) {
  std::vector<int> pos;
  for (int id : root_ids)
    if (rs.is_positive_id(id)) pos.push_back(id);
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  if (pos.empty()) return IMatrix::identity(rs.rank());
  std::vector<int> simples = subsystem_simples(rs, pos);
  std::vector<IMatrix> gens;
  for (int id : simples) gens.push_back(rs.reflection(rs.roots()[id]));
  IMatrix w = IMatrix::identity(rs.rank());
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (RootSystem::coords_positive(w.apply(rs.roots()[simples[g]]))) {
        w = w * gens[g];
        moved = true;
        break;
      }
    }
  }
  // certificate: the longest element inverts the whole positive part
  for (int id : pos)
    if (RootSystem::coords_positive(w.apply(rs.roots()[id])))
      throw internal_error("subsystem longest element failed to invert positives");
  return w;
}

WeylGroup WeylGroup::enumerate(const RootSystem& rs, std::size_t cap) {
  WeylGroup g;
  g.rs_ = &rs;
  int n = rs.rank();
  std::vector<IMatrix> gens;
  for (int i = 0; i < n; ++i) gens.push_back(rs.simple_reflection(i));

  g.elems_.push_back(WeylElement{IMatrix::identity(n), {}});
  g.index_.emplace(g.elems_[0].mat, 0);
  for (std::size_t head = 0; head < g.elems_.size(); ++head) {
    WeylElement cur = g.elems_[head]; // copy: vector may reallocate
    for (int i = 0; i < n; ++i) {
      IMatrix m = cur.mat * gens[i];
      if (g.index_.count(m)) continue;
      if (g.elems_.size() >= cap)
        throw cap_exceeded("Weyl group of " + rs.name() + " exceeds enumeration cap " +
                           std::to_string(cap));
      Word w = cur.word;
      w.push_back((std::uint8_t)i);
      g.index_.emplace(m, g.elems_.size());
      g.elems_.push_back(WeylElement{std::move(m), std::move(w)});
    }
  }
  return g;
}

std::optional<std::size_t> WeylGroup::find(const IMatrix& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t WeylGroup::id_of(const IMatrix& m) const {
  auto id = find(m);
  if (!id) throw internal_error("matrix is not a Weyl group element");
  return *id;
}

std::size_t WeylGroup::compose(std::size_t a, std::size_t b) const {
  return id_of(elems_[a].mat * elems_[b].mat);
}

std::size_t WeylGroup::inverse(std::size_t a) const {
  // w^{-1} has the reversed word
  IMatrix m = IMatrix::identity(rs_->rank());
  const Word& w = elems_[a].word;
  for (auto it = w.rbegin(); it != w.rend(); ++it) m = m * rs_->simple_reflection(*it);
  return id_of(m);
}

std::vector<std::size_t> WeylGroup::parabolic(const std::vector<int>& theta) const {
  validate_theta(*rs_, theta);
  std::vector<bool> allowed(rs_->rank(), false);
  for (int i : theta) allowed[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t id = 0; id < elems_.size(); ++id) {
    bool ok = true;
    for (auto s : elems_[id].word)
      if (!allowed[s]) { ok = false; break; }
    if (ok) out.push_back(id);
  }
  return out;
}

std::vector<std::size_t> WeylGroup::subgroup_closure(std::vector<std::size_t> gens,
                                                     std::size_t cap) const {
  std::set<std::size_t> got{identity_id()};
  std::deque<std::size_t> queue{identity_id()};
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t gidx : gens) {
      std::size_t nxt = compose(cur, gidx);
      if (got.insert(nxt).second) {
        if (cap && got.size() > cap)
          throw cap_exceeded("subgroup closure exceeds cap " + std::to_string(cap));
        queue.push_back(nxt);
      }
    }
  }
  return std::vector<std::size_t>(got.begin(), got.end());
}

std::vector<std::vector<int>> dynkin_components(const RootSystem& rs,
                                                const std::vector<int>& theta) {
  validate_theta(rs, theta);
  std::vector<int> nodes(theta);
  std::sort(nodes.begin(), nodes.end());
  const auto& c = rs.cartan_datum().cartan;
  std::vector<std::vector<int>> comps;
  std::set<int> unvisited(nodes.begin(), nodes.end());
  while (!unvisited.empty()) {
    std::vector<int> comp{*unvisited.begin()};
    unvisited.erase(unvisited.begin());
    for (std::size_t k = 0; k < comp.size(); ++k) {
      for (auto it = unvisited.begin(); it != unvisited.end();) {
        if (c[comp[k]][*it] != 0) {
          comp.push_back(*it);
          it = unvisited.erase(it);
        } else {
          ++it;
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

std::vector<int> word_support(const WeylElement& w) {
  std::set<int> s(w.word.begin(), w.word.end());
  return std::vector<int>(s.begin(), s.end());
}

} // namespace weylred::rootsys
