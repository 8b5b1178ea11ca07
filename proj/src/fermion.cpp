// Copyright 2026 The NoVa-ADAPT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nova/fermion.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nova {

OrbitalOrdering parse_orbital_ordering(std::string_view tag) {
  if (tag == "interleaved") return OrbitalOrdering::kInterleaved;
  if (tag == "blocked") return OrbitalOrdering::kBlocked;
  throw std::invalid_argument("unknown orbital ordering '" + std::string(tag) + "'");
}

std::string to_string(OrbitalOrdering ordering) {
  return ordering == OrbitalOrdering::kInterleaved ? "interleaved" : "blocked";
}

int spin_orbital(int spatial, Spin spin, int n_spatial, OrbitalOrdering ordering) {
  if (spatial < 0 || spatial >= n_spatial) {
    throw std::invalid_argument("spin_orbital: spatial index out of range");
  }
  const int s = static_cast<int>(spin);
  return ordering == OrbitalOrdering::kInterleaved ? 2 * spatial + s
                                                   : spatial + s * n_spatial;
}

// ---------------------------------------------------------------------------
// FermionTerm

namespace {

// Sorts ascending by adjacent swaps; returns false on a repeated index.
bool sort_with_sign(std::vector<int>& idx, int& sign) {
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return false;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return true;
}

PauliSum ladder(int mode, bool raising, int n) {
  std::string x(static_cast<std::size_t>(n), 'I');
  for (int q = 0; q < mode; ++q) x[static_cast<std::size_t>(q)] = 'Z';
  std::string y = x;
  x[static_cast<std::size_t>(mode)] = 'X';
  y[static_cast<std::size_t>(mode)] = 'Y';
  PauliSum s(n);
  s.add_term(x, 0.5);
  s.add_term(y, Complex(0.0, raising ? -0.5 : 0.5));
  return s;
}

}  // namespace

std::optional<FermionTerm> FermionTerm::normal_ordered() const {
  FermionTerm out = *this;
  int sign = 1;
  if (!sort_with_sign(out.creation, sign) || !sort_with_sign(out.annihilation, sign)) {
    return std::nullopt;
  }
  out.coefficient *= static_cast<double>(sign);
  return out;
}

FermionTerm FermionTerm::adjoint() const {
  FermionTerm out;
  out.creation.assign(annihilation.rbegin(), annihilation.rend());
  out.annihilation.assign(creation.rbegin(), creation.rend());
  out.coefficient = std::conj(coefficient);
  return out;
}

FermionOperator adjoint(const FermionOperator& op) {
  FermionOperator out;
  out.reserve(op.size());
  for (const auto& t : op) out.push_back(t.adjoint());
  return out;
}

FermionOperator anti_hermitian_part(const FermionOperator& op) {
  FermionOperator out = op;
  for (const auto& t : op) {
    auto a = t.adjoint();
    a.coefficient = -a.coefficient;
    out.push_back(std::move(a));
  }
  return out;
}

PauliSum jordan_wigner(const FermionTerm& term, int n) {
  for (int i : term.creation)
    if (i < 0 || i >= n) throw std::invalid_argument("jordan_wigner: index out of range");
  for (int i : term.annihilation)
    if (i < 0 || i >= n) throw std::invalid_argument("jordan_wigner: index out of range");
  PauliSum out = PauliSum::identity(n, term.coefficient);
  for (int i : term.creation) out = out * ladder(i, true, n);
  for (int i : term.annihilation) out = out * ladder(i, false, n);
  return out;
}

PauliSum jordan_wigner(const FermionOperator& op, int n) {
  PauliSum out(n);
  for (const auto& t : op) out += jordan_wigner(t, n);
  return out;
}

PauliSum number_operator(int n) {
  FermionOperator op;
  for (int p = 0; p < n; ++p) op.push_back({{p}, {p}, 1.0});
  return jordan_wigner(op, n);
}

PauliSum sz_operator(int n_spatial, OrbitalOrdering ordering) {
  FermionOperator op;
  for (int a = 0; a < n_spatial; ++a) {
    const int up = spin_orbital(a, Spin::kAlpha, n_spatial, ordering);
    const int dn = spin_orbital(a, Spin::kBeta, n_spatial, ordering);
    op.push_back({{up}, {up}, 0.5});
    op.push_back({{dn}, {dn}, -0.5});
  }
  return jordan_wigner(op, 2 * n_spatial);
}

std::uint64_t hartree_fock_index(int n_qubits, int n_electrons,
                                 OrbitalOrdering ordering) {
  if (n_qubits % 2 != 0 || n_electrons < 0 || n_electrons > n_qubits) {
    throw std::invalid_argument("hartree_fock_index: bad electron/qubit counts");
  }
  const int n_spatial = n_qubits / 2;
  std::uint64_t index = 0;
  for (int e = 0; e < n_electrons; ++e) {
    const Spin spin = e % 2 == 0 ? Spin::kAlpha : Spin::kBeta;
    index |= std::uint64_t{1} << spin_orbital(e / 2, spin, n_spatial, ordering);
  }
  return index;
}

StateVector hartree_fock_state(int n_qubits, int n_electrons,
                               OrbitalOrdering ordering) {
  return StateVector::basis(n_qubits,
                            hartree_fock_index(n_qubits, n_electrons, ordering));
}

// ---------------------------------------------------------------------------
// Pools

std::string to_string(PoolKind kind) {
  switch (kind) {
    case PoolKind::kSpinAdaptedSingle: return "spin_adapted_single";
    case PoolKind::kSpinAdaptedDoubleTriplet: return "spin_adapted_double_T";
    case PoolKind::kSpinAdaptedDoubleSinglet: return "spin_adapted_double_S";
    case PoolKind::kQubitPauli: return "qubit_pauli";
  }
  return "unknown";
}

PoolKind parse_pool_kind(std::string_view tag) {
  for (auto k : {PoolKind::kSpinAdaptedSingle, PoolKind::kSpinAdaptedDoubleTriplet,
                 PoolKind::kSpinAdaptedDoubleSinglet, PoolKind::kQubitPauli}) {
    if (to_string(k) == tag) return k;
  }
  throw std::invalid_argument("unknown pool kind '" + std::string(tag) + "'");
}

namespace {

// Pair-creation operator |X>_pq for the two-electron states on spatial p <= q.
enum class PairState { kSinglet, kTripletUp, kTripletDown, kTripletZero };

FermionOperator pair_creator(int p, int q, PairState state, int n_spatial,
                             OrbitalOrdering ord) {
  const auto so = [&](int a, Spin s) { return spin_orbital(a, s, n_spatial, ord); };
  const double r = 1.0 / std::sqrt(2.0);
  switch (state) {
    case PairState::kSinglet:
      if (p == q) return {{{so(p, Spin::kAlpha), so(p, Spin::kBeta)}, {}, 1.0}};
      return {{{so(p, Spin::kAlpha), so(q, Spin::kBeta)}, {}, r},
              {{so(p, Spin::kBeta), so(q, Spin::kAlpha)}, {}, -r}};
    case PairState::kTripletUp:
      return {{{so(p, Spin::kAlpha), so(q, Spin::kAlpha)}, {}, 1.0}};
    case PairState::kTripletDown:
      return {{{so(p, Spin::kBeta), so(q, Spin::kBeta)}, {}, 1.0}};
    case PairState::kTripletZero:
      return {{{so(p, Spin::kAlpha), so(q, Spin::kBeta)}, {}, r},
              {{so(p, Spin::kBeta), so(q, Spin::kAlpha)}, {}, r}};
  }
  return {};
}

// |X>_pq <X|_rs as creator(pq) * creator(rs)^dagger.
FermionOperator pair_transfer(const FermionOperator& to, const FermionOperator& from) {
  FermionOperator out;
  for (const auto& c : to) {
    for (const auto& a : adjoint(from)) {
      out.push_back({c.creation, a.annihilation, c.coefficient * a.coefficient});
    }
  }
  return out;
}

PoolOperator make_generator(const FermionOperator& excitation, int n_qubits,
                            std::string label, PoolKind kind) {
  // A = -i (T - T^dagger), Hermitian; then unit spectral norm.
  PauliSum a = jordan_wigner(anti_hermitian_part(excitation), n_qubits) *
               Complex(0.0, -1.0);
  const double nrm = spectral_norm(a, NormMethod::kExactDense);
  if (!(nrm > 0.0)) throw std::logic_error("pool generator vanished: " + label);
  PauliSum real(n_qubits);
  for (const auto& [w, c] : a.terms()) real.add_term(w, c.real() / nrm);
  return {std::move(real.prune()), std::move(label), kind};
}

std::string pair_label(int p, int q) {
  return std::to_string(p) + "," + std::to_string(q);
}

}  // namespace

std::vector<PoolOperator> build_spin_adapted_pool(int n_spatial,
                                                  OrbitalOrdering ordering) {
  if (n_spatial < 2) {
    throw std::invalid_argument("build_spin_adapted_pool: need >= 2 spatial orbitals");
  }
  const int n_qubits = 2 * n_spatial;
  const auto so = [&](int a, Spin s) { return spin_orbital(a, s, n_spatial, ordering); };
  std::vector<PoolOperator> pool;

  for (int a = 0; a < n_spatial; ++a) {
    for (int b = a + 1; b < n_spatial; ++b) {
      FermionOperator t = {{{so(b, Spin::kAlpha)}, {so(a, Spin::kAlpha)}, 1.0},
                           {{so(b, Spin::kBeta)}, {so(a, Spin::kBeta)}, 1.0}};
      pool.push_back(make_generator(t, n_qubits, "s(" + pair_label(a, b) + ")",
                                    PoolKind::kSpinAdaptedSingle));
    }
  }

  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < n_spatial; ++p)
    for (int q = p; q < n_spatial; ++q) pairs.emplace_back(p, q);

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const auto [r, s] = pairs[i];  // annihilated pair
      const auto [p, q] = pairs[j];  // created pair
      const std::string tag = "(" + pair_label(p, q) + ";" + pair_label(r, s) + ")";
      if (p < q && r < s) {
        FermionOperator t;
        for (auto st : {PairState::kTripletUp, PairState::kTripletDown,
                        PairState::kTripletZero}) {
          auto part = pair_transfer(pair_creator(p, q, st, n_spatial, ordering),
                                    pair_creator(r, s, st, n_spatial, ordering));
          t.insert(t.end(), part.begin(), part.end());
        }
        pool.push_back(make_generator(t, n_qubits, "dT" + tag,
                                      PoolKind::kSpinAdaptedDoubleTriplet));
      }
      auto t = pair_transfer(pair_creator(p, q, PairState::kSinglet, n_spatial, ordering),
                             pair_creator(r, s, PairState::kSinglet, n_spatial, ordering));
      pool.push_back(make_generator(t, n_qubits, "dS" + tag,
                                    PoolKind::kSpinAdaptedDoubleSinglet));
    }
  }
  return pool;
}

std::vector<PoolOperator> build_qubit_pool(int n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("build_qubit_pool: need >= 2 qubits");
  std::vector<FermionOperator> excitations;
  for (int p = 0; p < n_qubits; ++p)
    for (int q = p + 1; q < n_qubits; ++q) excitations.push_back({{{q}, {p}, 1.0}});
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < n_qubits; ++p)
    for (int q = p + 1; q < n_qubits; ++q) pairs.emplace_back(p, q);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const auto [r, s] = pairs[i];
      const auto [p, q] = pairs[j];
      excitations.push_back({{{p, q}, {s, r}, 1.0}});
    }

  std::vector<PoolOperator> pool;
  std::set<PauliString> seen;
  for (const auto& t : excitations) {
    const PauliSum image =
        jordan_wigner(anti_hermitian_part(t), n_qubits) * Complex(0.0, -1.0);
    for (const auto& [w, c] : image.terms()) {
      const PauliString stripped(n_qubits, w.x_mask(), w.z_mask() & w.x_mask());
      if (stripped.y_count() % 2 == 0) continue;
      if (!seen.insert(stripped).second) continue;
      pool.push_back({PauliSum::from_word(stripped), stripped.label(),
                      PoolKind::kQubitPauli});
    }
  }
  return pool;
}

void dump_pool(std::ostream& os, const std::vector<PoolOperator>& pool) {
  os << std::setprecision(17);
  for (const auto& op : pool) {
    os << to_string(op.kind) << '\t' << op.label << '\t';
    bool first = true;
    for (const auto& [w, c] : op.generator.terms()) {
      if (!first) os << ' ';
      first = false;
      os << c.real() << ':' << w.label();
    }
    os << '\n';
  }
}

std::vector<PoolOperator> load_pool(std::istream& is, int n_qubits) {
  std::vector<PoolOperator> pool;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind, label, rest;
    if (!std::getline(ls, kind, '\t') || !std::getline(ls, label, '\t')) {
      throw std::runtime_error("load_pool: malformed line " + std::to_string(line_no));
    }
    PauliSum gen(n_qubits);
    std::string item;
    while (ls >> item) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) {
        throw std::runtime_error("load_pool: malformed term on line " +
                                 std::to_string(line_no));
      }
      const auto word = item.substr(colon + 1);
      if (static_cast<int>(word.size()) != n_qubits) {
        throw std::runtime_error("load_pool: word length mismatch on line " +
                                 std::to_string(line_no));
      }
      gen.add_term(word, std::stod(item.substr(0, colon)));
    }
    gen.prune();
    pool.push_back({std::move(gen), label, parse_pool_kind(kind)});
  }
  return pool;
}

}  // namespace nova
