#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include "growthkit/errors.hpp"
#include "growthkit/group.hpp"
#include "growthkit/rational.hpp"

namespace growthkit {

/// Caps every computed set. Exceeding it raises ResourceError.
struct Budget {
  std::size_t max_elements = 10'000'000;
  /// Partitions of the outer loop in `product`; results are independent of it.
  std::size_t shards = 1;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

struct CodeHash {
  std::size_t operator()(const Code& c) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL + c.size();
    for (auto v : c) h = mix64(h ^ static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
  }
};

using CodeSet = absl::flat_hash_set<Code, CodeHash>;
template <class V>
using CodeMap = absl::flat_hash_map<Code, V, CodeHash>;

[[noreturn]] inline void over_budget(std::size_t size, const Budget& budget, const std::string& what) {
  throw ResourceError(what + " reached " + std::to_string(size) + " elements, above the budget of " +
                          std::to_string(budget.max_elements) + " elements",
                      budget.max_elements);
}

}  // namespace detail

/// Immutable finite set of canonical elements of one group. Iterates in
/// canonical order; membership is a hash lookup.
class ElementSet {
 public:
  ElementSet() : data_(std::make_shared<Storage>()) {}
  explicit ElementSet(Group group) : group_(group), data_(std::make_shared<Storage>()) {}

  /// Deduplicates; every element must belong to `group`.
  ElementSet(Group group, std::vector<Element> elements) : group_(group) {
    detail::CodeSet seen;
    std::vector<Element> unique;
    unique.reserve(elements.size());
    for (auto& e : elements) {
      group.check(e);
      if (seen.insert(e.code()).second) unique.push_back(std::move(e));
    }
    data_ = make_storage(std::move(unique));
  }

  static ElementSet from_codes(Group group, std::vector<Code> codes) {
    std::vector<Element> elements;
    elements.reserve(codes.size());
    for (auto& c : codes) elements.emplace_back(group.model(), std::move(c));
    ElementSet s;
    s.group_ = group;
    s.data_ = make_storage(std::move(elements));
    return s;
  }

  static ElementSet parse(Group group, const std::vector<std::string>& literals) {
    std::vector<Element> elements;
    for (auto& lit : literals) elements.push_back(group.parse_element(lit));
    return ElementSet(group, std::move(elements));
  }

  Group group() const { return group_; }
  std::size_t size() const { return data_ ? data_->sorted.size() : 0; }
  bool empty() const { return size() == 0; }
  const std::vector<Element>& elements() const { return data_->sorted; }
  auto begin() const { return data_->sorted.begin(); }
  auto end() const { return data_->sorted.end(); }
  const Element& operator[](std::size_t i) const { return data_->sorted[i]; }

  bool contains(const Element& g) const { return g.model() == group_.model() && contains_code(g.code()); }
  bool contains_code(const Code& c) const { return data_ && data_->index.contains(c); }

  bool contains_identity() const { return contains(group_.identity()); }

  bool is_symmetric() const {
    for (auto& g : *this)
      if (!contains(inverse(g))) return false;
    return true;
  }

  bool subset_of(const ElementSet& other) const {
    if (!(group_ == other.group_)) return false;
    for (auto& g : *this)
      if (!other.contains(g)) return false;
    return true;
  }

  ElementSet inverted() const {
    std::vector<Element> out;
    for (auto& g : *this) out.push_back(inverse(g));
    return ElementSet(group_, std::move(out));
  }

  ElementSet translate_left(const Element& x) const {
    group_.check(x);
    std::vector<Element> out;
    for (auto& g : *this) out.push_back(x * g);
    return ElementSet(group_, std::move(out));
  }

  /// Closes under inverses and adds the identity.
  ElementSet symmetrized() const {
    std::vector<Element> out(begin(), end());
    for (auto& g : *this) out.push_back(inverse(g));
    out.push_back(group_.identity());
    return ElementSet(group_, std::move(out));
  }

  ElementSet united(const ElementSet& other) const {
    require_same_group(other);
    std::vector<Element> out(begin(), end());
    out.insert(out.end(), other.begin(), other.end());
    return ElementSet(group_, std::move(out));
  }

  std::vector<std::string> literals() const {
    std::vector<std::string> out;
    out.reserve(size());
    for (auto& g : *this) out.push_back(g.str());
    return out;
  }

  void require_same_group(const ElementSet& other) const {
    if (!(group_ == other.group_))
      throw DomainError("sets belong to different groups: " + group_.descriptor() + " and " +
                        other.group_.descriptor());
  }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    if (!(a.group_ == b.group_) || a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!(a[i] == b[i])) return false;
    return true;
  }

 private:
  struct IndexHash {
    using is_transparent = void;
    const std::vector<Element>* elems;
    std::size_t operator()(std::uint32_t i) const { return detail::CodeHash{}((*elems)[i].code()); }
    std::size_t operator()(const Code& c) const { return detail::CodeHash{}(c); }
  };
  struct IndexEq {
    using is_transparent = void;
    const std::vector<Element>* elems;
    bool operator()(std::uint32_t a, std::uint32_t b) const { return a == b; }
    bool operator()(std::uint32_t a, const Code& c) const { return (*elems)[a].code() == c; }
    bool operator()(const Code& c, std::uint32_t a) const { return (*elems)[a].code() == c; }
  };
  struct Storage {
    std::vector<Element> sorted;
    absl::flat_hash_set<std::uint32_t, IndexHash, IndexEq> index{0, IndexHash{&sorted}, IndexEq{&sorted}};
  };

  static std::shared_ptr<const Storage> make_storage(std::vector<Element> elements) {
    auto storage = std::make_shared<Storage>();
    std::sort(elements.begin(), elements.end(), CanonicalLess{});
    storage->sorted = std::move(elements);
    storage->index.reserve(storage->sorted.size());
    for (std::uint32_t i = 0; i < storage->sorted.size(); ++i) storage->index.insert(i);
    return storage;
  }

  Group group_;
  std::shared_ptr<const Storage> data_;
};

inline std::ostream& operator<<(std::ostream& os, const ElementSet& s) {
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i];
  return os << '}';
}

/// {a·b : a ∈ A, b ∈ B}. The smaller operand drives the outer loop, which is
/// split into `budget.shards` independent partitions.
inline ElementSet product(const ElementSet& a, const ElementSet& b, const Budget& budget = {}) {
  a.require_same_group(b);
  const auto* model = a.group().model();
  const bool a_outer = a.size() <= b.size();
  const auto& outer = a_outer ? a : b;
  const auto& inner = a_outer ? b : a;
  const std::size_t shards = std::max<std::size_t>(1, std::min(budget.shards, outer.size()));

  auto run = [&](std::size_t lo, std::size_t hi) {
    detail::CodeSet acc;
    Code scratch;
    for (std::size_t i = lo; i < hi; ++i) {
      const auto& x = outer[i].code();
      for (const auto& y : inner) {
        if (a_outer)
          model->multiply(x, y.code(), scratch);
        else
          model->multiply(y.code(), x, scratch);
        acc.insert(scratch);
        if (acc.size() > budget.max_elements) detail::over_budget(acc.size(), budget, "product set");
      }
    }
    return acc;
  };

  detail::CodeSet merged;
  if (shards == 1) {
    merged = run(0, outer.size());
  } else {
    std::vector<std::future<detail::CodeSet>> parts;
    const std::size_t step = (outer.size() + shards - 1) / shards;
    for (std::size_t lo = 0; lo < outer.size(); lo += step)
      parts.push_back(std::async(std::launch::async, run, lo, std::min(outer.size(), lo + step)));
    for (auto& p : parts) {
      auto part = p.get();
      if (merged.empty())
        merged = std::move(part);
      else
        merged.insert(part.begin(), part.end());
      if (merged.size() > budget.max_elements) detail::over_budget(merged.size(), budget, "product set");
    }
  }
  return ElementSet::from_codes(a.group(), std::vector<Code>(merged.begin(), merged.end()));
}

/// Incrementally grown powers U, U², U³, … of a set containing the
/// identity. Each step multiplies only the newest layer by U, and records for
/// every element the least exponent j with the element in U^j.
class PowerLadder {
 public:
  PowerLadder(ElementSet base, Budget budget = {}) : base_(std::move(base)), budget_(budget) {
    if (!base_.contains_identity()) throw PreconditionError("power ladder needs the identity in its base set");
    auto e = base_.group().identity().code();
    length_.emplace(e, 0);
    frontier_.push_back(e);
    sizes_.push_back(1);
  }

  const ElementSet& base() const noexcept { return base_; }
  std::size_t exponent() const noexcept { return sizes_.size() - 1; }
  bool saturated() const noexcept { return frontier_.empty(); }
  std::size_t cardinality() const noexcept { return length_.size(); }

  /// |U^j|; advances as needed.
  std::size_t size_at(std::size_t j) {
    advance_to(j);
    return sizes_[std::min(j, exponent())];
  }

  /// Computes U^{exponent+1}. Returns false once the chain has stabilised.
  bool advance() {
    if (frontier_.empty()) {
      sizes_.push_back(sizes_.back());
      return false;
    }
    const auto* model = base_.group().model();
    const auto next = static_cast<std::uint32_t>(exponent() + 1);
    std::vector<Code> fresh;
    Code scratch;
    for (const auto& f : frontier_) {
      for (const auto& u : base_) {
        model->multiply(f, u.code(), scratch);
        if (length_.try_emplace(scratch, next).second) {
          fresh.push_back(scratch);
          if (length_.size() > budget_.max_elements)
            detail::over_budget(length_.size(), budget_, "power " + std::to_string(next) + " of a set");
        }
      }
    }
    frontier_ = std::move(fresh);
    sizes_.push_back(length_.size());
    return !frontier_.empty();
  }

  void advance_to(std::size_t j) {
    while (exponent() < j) {
      if (saturated()) {
        sizes_.resize(j + 1, sizes_.back());
        return;
      }
      advance();
    }
  }

  /// Least j with g ∈ U^j, searching no further than `cap`; nullopt if g is
  /// not in U^cap (or never, once saturated).
  std::optional<std::size_t> length(const Element& g, std::size_t cap) {
    base_.group().check(g);
    while (true) {
      if (auto it = length_.find(g.code()); it != length_.end()) {
        if (it->second <= cap) return it->second;
        return std::nullopt;
      }
      if (saturated() || exponent() >= cap) return std::nullopt;
      advance();
    }
  }

  bool in_power(const Element& g, std::size_t j) { return length(g, j).has_value(); }

  ElementSet power(std::size_t j) {
    advance_to(j);
    std::vector<Code> codes;
    codes.reserve(sizes_[std::min(j, exponent())]);
    for (const auto& [code, len] : length_)
      if (len <= j) codes.push_back(code);
    return ElementSet::from_codes(base_.group(), std::move(codes));
  }

 private:
  ElementSet base_;
  Budget budget_;
  detail::CodeMap<std::uint32_t> length_;
  std::vector<Code> frontier_;
  std::vector<std::size_t> sizes_;
};

/// S^n with S^0 = {e}. Uses the layered ladder when e ∈ S, plain repeated
/// products otherwise; stops early once S^n = S^{n-1} with e ∈ S.
inline ElementSet power(const ElementSet& s, std::size_t n, const Budget& budget = {}) {
  if (n == 0) return ElementSet(s.group(), {s.group().identity()});
  if (s.contains_identity()) {
    PowerLadder ladder(s, budget);
    return ladder.power(n);
  }
  ElementSet acc = s;
  for (std::size_t i = 1; i < n; ++i) acc = product(acc, s, budget);
  return acc;
}

inline void require_symmetric_with_identity(const ElementSet& s, const char* what) {
  if (!s.contains_identity()) throw PreconditionError(std::string(what) + " must contain the identity");
  if (!s.is_symmetric()) throw PreconditionError(std::string(what) + " must be symmetric");
}

/// β(0..N) with β(n) = |S^n|.
struct GrowthProfile {
  ElementSet generators;
  std::vector<std::uint64_t> values;

  std::string to_csv() const {
    std::string out = "n,beta\n";
    for (std::size_t n = 0; n < values.size(); ++n) out += std::to_string(n) + "," + std::to_string(values[n]) + "\n";
    return out;
  }
};

inline GrowthProfile growth_profile(const ElementSet& s, std::size_t max_radius, const Budget& budget = {}) {
  require_symmetric_with_identity(s, "generating set");
  PowerLadder ladder(s, budget);
  GrowthProfile profile{s, {}};
  for (std::size_t n = 0; n <= max_radius; ++n) profile.values.push_back(ladder.size_at(n));
  return profile;
}

/// |S^{2n}| / |S^n|.
inline Rational doubling_ratio(const ElementSet& s, std::size_t n, const Budget& budget = {}) {
  require_symmetric_with_identity(s, "generating set");
  if (n < 1) throw PreconditionError("doubling ratio needs n >= 1");
  PowerLadder ladder(s, budget);
  return ratio(ladder.size_at(2 * n), ladder.size_at(n));
}

/// {e} ∪ standard generators ∪ inverses.
inline ElementSet standard_generating_set(Group group) {
  return ElementSet(group, group.standard_generators()).symmetrized();
}

}  // namespace growthkit
