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

#include "nova/hamiltonian_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nova {

namespace {

[[noreturn]] void fail(const std::string& source, int line, const std::string& what) {
  throw std::runtime_error(source + ":" + std::to_string(line) + ": " + what);
}

std::string format_coefficient(double c) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, c);
  std::string s(buf, res.ptr);
  if (c >= 0.0) s.insert(s.begin(), '+');
  return s;
}

double parse_real(const std::string& tok, const std::string& source, int line) {
  if (tok.find_first_of("ijIJ") != std::string::npos && tok.find("inf") == std::string::npos) {
    fail(source, line, "non-real coefficient '" + tok + "'");
  }
  const char* first = tok.data();
  if (*first == '+') ++first;
  double v = 0.0;
  const auto res = std::from_chars(first, tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    fail(source, line, "bad coefficient '" + tok + "'");
  }
  if (!std::isfinite(v)) fail(source, line, "non-finite coefficient");
  return v;
}

int parse_int(const std::string& tok, const std::string& source, int line) {
  int v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    fail(source, line, "bad integer '" + tok + "'");
  }
  return v;
}

}  // namespace

PauliSum HamiltonianFile::to_sum() const {
  PauliSum h(n_qubits);
  for (const auto& t : terms) h.add_term(t.word, t.coefficient);
  if (energy_offset != 0.0) h.add_term(PauliString::identity(n_qubits), energy_offset);
  return h.prune();
}

bool HamiltonianFile::fully_tagged() const {
  for (const auto& t : terms)
    if (t.tag == BodyTag::kUntagged) return false;
  return true;
}

std::uint64_t HamiltonianFile::checksum() const {
  std::ostringstream os;
  serialize_hamiltonian(os, *this);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char ch : os.str()) {
    hash ^= ch;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

HamiltonianFile parse_hamiltonian(std::istream& in, const std::string& source) {
  HamiltonianFile f;
  std::set<std::string> seen_keys;
  std::set<PauliString> seen_words;
  bool in_terms = false;
  bool have_identity = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (!in_terms) {
      if (tok[0] == "terms") {
        if (tok.size() != 1) fail(source, line, "unexpected text after 'terms'");
        for (const char* key : {"n_qubits", "n_electrons", "orbital_ordering"}) {
          if (!seen_keys.count(key)) fail(source, line, std::string("missing header key ") + key);
        }
        in_terms = true;
        continue;
      }
      if (tok.size() != 2) fail(source, line, "header lines are 'key value'");
      if (!seen_keys.insert(tok[0]).second) fail(source, line, "duplicate key " + tok[0]);
      if (tok[0] == "n_qubits") {
        f.n_qubits = parse_int(tok[1], source, line);
        if (f.n_qubits < 1 || f.n_qubits > kMaxMaskQubits) fail(source, line, "n_qubits out of range");
      } else if (tok[0] == "n_electrons") {
        f.n_electrons = parse_int(tok[1], source, line);
        if (f.n_electrons < 0) fail(source, line, "negative n_electrons");
      } else if (tok[0] == "orbital_ordering") {
        try {
          f.ordering = parse_orbital_ordering(tok[1]);
        } catch (const std::invalid_argument& e) {
          fail(source, line, e.what());
        }
      } else if (tok[0] == "energy_offset") {
        f.energy_offset = parse_real(tok[1], source, line);
      } else {
        fail(source, line, "unknown header key " + tok[0]);
      }
      continue;
    }

    if (tok.size() < 2 || tok.size() > 3) {
      fail(source, line, "term lines are 'coefficient WORD [tag]'");
    }
    HamiltonianTerm term{parse_real(tok[0], source, line), {}, BodyTag::kUntagged};
    if (static_cast<int>(tok[1].size()) != f.n_qubits) {
      fail(source, line, "word length " + std::to_string(tok[1].size()) +
                             " != n_qubits " + std::to_string(f.n_qubits));
    }
    try {
      term.word = PauliString::from_label(tok[1]);
    } catch (const std::invalid_argument&) {
      fail(source, line, "bad Pauli word '" + tok[1] + "'");
    }
    if (tok.size() == 3) {
      const int tag = parse_int(tok[2], source, line);
      if (tag < 0 || tag > 2) fail(source, line, "body tag must be 0, 1 or 2");
      term.tag = static_cast<BodyTag>(tag);
      if ((tag == 0) != term.word.is_identity()) {
        fail(source, line, "tag 0 is reserved for the identity term");
      }
    }
    if (term.word.is_identity()) {
      if (have_identity) fail(source, line, "more than one identity term");
      have_identity = true;
    }
    if (!seen_words.insert(term.word).second) fail(source, line, "duplicate word " + tok[1]);
    f.terms.push_back(std::move(term));
  }
  if (!in_terms) fail(source, line, "missing 'terms' section");
  if (f.terms.empty()) fail(source, line, "empty term section");
  return f;
}

HamiltonianFile load_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Hamiltonian file " + path.string());
  return parse_hamiltonian(in, path.string());
}

void serialize_hamiltonian(std::ostream& out, const HamiltonianFile& f) {
  out << "n_qubits " << f.n_qubits << '\n'
      << "n_electrons " << f.n_electrons << '\n'
      << "orbital_ordering " << to_string(f.ordering) << '\n'
      << "energy_offset " << format_coefficient(f.energy_offset) << '\n'
      << "terms\n";
  for (const auto& t : f.terms) {
    out << format_coefficient(t.coefficient) << ' ' << t.word.label();
    if (t.tag != BodyTag::kUntagged) out << ' ' << static_cast<int>(t.tag);
    out << '\n';
  }
}

std::pair<PauliSum, PauliSum> split_hamiltonian(const HamiltonianFile& f) {
  if (!f.fully_tagged()) {
    throw std::invalid_argument("split_hamiltonian: every term needs a body tag");
  }
  PauliSum h1(f.n_qubits), h2(f.n_qubits);
  for (const auto& t : f.terms) {
    (t.tag == BodyTag::kTwoBody ? h2 : h1).add_term(t.word, t.coefficient);
  }
  if (f.energy_offset != 0.0) h1.add_term(PauliString::identity(f.n_qubits), f.energy_offset);
  return {std::move(h1.prune()), std::move(h2.prune())};
}

}  // namespace nova
