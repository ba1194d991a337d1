#pragma once

// Names, name-types, and finite permutations represented as transposition
// sequences.  Names are (type, id) pairs; the display label is cosmetic and
// ignored by equality.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nomlog {

struct NameType {
  std::string ident;

  friend bool operator==(const NameType& a, const NameType& b) {
    return a.ident == b.ident;
  }
  friend bool operator!=(const NameType& a, const NameType& b) {
    return !(a == b);
  }
  friend bool operator<(const NameType& a, const NameType& b) {
    return a.ident < b.ident;
  }
};

struct Name {
  NameType type;
  std::uint64_t id = 0;
  std::string display;  // source label; empty for generated names

  friend bool operator==(const Name& a, const Name& b) {
    return a.id == b.id && a.type == b.type;
  }
  friend bool operator!=(const Name& a, const Name& b) { return !(a == b); }
  friend bool operator<(const Name& a, const Name& b) {
    if (a.type != b.type) return a.type < b.type;
    return a.id < b.id;
  }

  std::string label() const {
    return display.empty() ? type.ident + "$" + std::to_string(id) : display;
  }
};

// A transposition (a b); both names must share a name-type.
using Swap = std::pair<Name, Name>;

// Finite permutation as a sequence of transpositions applied right-to-left:
// the last element of `swaps` acts first.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<Swap> swaps) : swaps_(std::move(swaps)) {}
  static Perm single(Name a, Name b) {
    return Perm({Swap{std::move(a), std::move(b)}});
  }

  bool is_identity_syntactically() const { return swaps_.empty(); }
  const std::vector<Swap>& swaps() const { return swaps_; }

  Name apply(const Name& n) const {
    Name r = n;
    for (auto it = swaps_.rbegin(); it != swaps_.rend(); ++it) {
      if (r == it->first)
        r = it->second;
      else if (r == it->second)
        r = it->first;
    }
    return r;
  }

  Perm inverse() const {
    std::vector<Swap> rev(swaps_.rbegin(), swaps_.rend());
    return Perm(std::move(rev));
  }

  // compose(p, q) acts as p after q: result(n) = p(q(n)).
  static Perm compose(const Perm& p, const Perm& q) {
    std::vector<Swap> s = p.swaps_;
    s.insert(s.end(), q.swaps_.begin(), q.swaps_.end());
    return Perm(std::move(s));
  }

  // Names mentioned by the transpositions; every other name is fixed.
  std::vector<Name> domain() const {
    std::vector<Name> d;
    auto add = [&d](const Name& n) {
      for (const auto& m : d)
        if (m == n) return;
      d.push_back(n);
    };
    for (const auto& [a, b] : swaps_) {
      add(a);
      add(b);
    }
    return d;
  }

  friend bool operator==(const Perm& a, const Perm& b) {
    return a.swaps_ == b.swaps_;
  }

 private:
  std::vector<Swap> swaps_;
};

inline Name perm_apply(const Perm& p, const Name& n) { return p.apply(n); }
inline Perm perm_compose(const Perm& p, const Perm& q) {
  return Perm::compose(p, q);
}
inline Perm perm_inverse(const Perm& p) { return p.inverse(); }

// {a in domain | p(a) != q(a)}
inline std::vector<Name> perm_disagreement(const Perm& p, const Perm& q,
                                           const std::vector<Name>& domain) {
  std::vector<Name> out;
  for (const auto& a : domain)
    if (!(p.apply(a) == q.apply(a))) out.push_back(a);
  return out;
}

// Monotone fresh-name supply.  One generator per engine; ids start above
// every id handed out by the parser, so generated names are automatically
// distinct from parsed ones.
class NameGen {
 public:
  explicit NameGen(std::uint64_t first = 1'000'000) : next_(first) {}

  void reserve_above(std::uint64_t id) {
    if (id >= next_) next_ = id + 1;
  }

  Name fresh(const NameType& type) { return Name{type, next_++, ""}; }

  std::uint64_t next_id() const { return next_; }

 private:
  std::uint64_t next_;
};

}  // namespace nomlog
