#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "growthkit/errors.hpp"

namespace growthkit {

/// Family-specific canonical encoding of a group element.
using Code = boost::container::small_vector<std::int64_t, 4>;

namespace detail {

// Position-tracking reader shared by element and descriptor parsers.
// `base` offsets reported positions when parsing a slice of a larger text.
class Cursor {
 public:
  explicit Cursor(std::string_view text, std::size_t base = 0) : text_(text), base_(base) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
    const bool negative = start < text_.size() && text_[start] == '-';
    std::size_t digits = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected integer");
    }
    std::uint64_t magnitude = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, magnitude);
    (void)ptr;
    const std::uint64_t limit = negative ? std::uint64_t{1} << 63 : (std::uint64_t{1} << 63) - 1;
    if (ec != std::errc{} || magnitude > limit) {
      pos_ = start;
      fail("integer out of range");
    }
    return negative ? static_cast<std::int64_t>(0 - magnitude) : static_cast<std::int64_t>(magnitude);
  }
  std::string_view word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           ((text_[pos_] >= 'a' && text_[pos_] <= 'z') || (text_[pos_] >= 'A' && text_[pos_] <= 'Z') ||
            text_[pos_] == '_'))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }
  void finish() {
    if (!at_end()) fail("unexpected trailing input");
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, base_ + pos_); }

  std::size_t pos() const noexcept { return pos_; }
  std::size_t raw_pos() const noexcept { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::string_view rest() const { return text_.substr(pos_); }

 private:
  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

inline std::int64_t mod(std::int64_t value, std::int64_t modulus) {
  std::int64_t r = value % modulus;
  return r < 0 ? r + modulus : r;
}

}  // namespace detail

/// Runtime model of one group family instance. Implementations are immutable
/// and interned, so a model pointer identifies its group.
class GroupModel {
 public:
  virtual ~GroupModel() = default;

  const std::string& descriptor() const noexcept { return descriptor_; }
  virtual bool finite() const = 0;
  virtual bool abelian() const = 0;
  virtual Code identity() const = 0;
  virtual void multiply(const Code& a, const Code& b, Code& out) const = 0;
  virtual Code invert(const Code& a) const = 0;
  /// Brings an arbitrary encoding to canonical form; throws DomainError if
  /// the encoding cannot denote an element of this group.
  virtual void canonicalize(Code& code) const = 0;
  /// Canonical order: lexicographic on the encoding.
  virtual std::strong_ordering compare(const Code& a, const Code& b) const {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }
  virtual Code parse(detail::Cursor& in) const = 0;
  virtual void render(const Code& a, std::string& out) const = 0;
  /// Standard generators, identity excluded; not necessarily closed under inverse.
  virtual std::vector<Code> standard_generators() const = 0;

 protected:
  explicit GroupModel(std::string descriptor) : descriptor_(std::move(descriptor)) {}

 private:
  std::string descriptor_;
};

class Group;

/// A canonical group element. Equal iff same group and identical encoding.
class Element {
 public:
  Element() = default;
  Element(const GroupModel* group, Code code) : group_(group), code_(std::move(code)) {}

  const GroupModel* model() const noexcept { return group_; }
  inline Group group() const;
  const Code& code() const noexcept { return code_; }

  std::string str() const {
    std::string out;
    group_->render(code_, out);
    return out;
  }

  friend bool operator==(const Element& a, const Element& b) {
    return a.group_ == b.group_ && a.code_ == b.code_;
  }

 private:
  const GroupModel* group_ = nullptr;
  Code code_;
};

/// Canonical-order comparator for elements of one group.
struct CanonicalLess {
  bool operator()(const Element& a, const Element& b) const {
    return a.model()->compare(a.code(), b.code()) < 0;
  }
};

/// Handle to an interned group model. Cheap to copy.
class Group {
 public:
  Group() = default;
  explicit Group(const GroupModel* model) : model_(model) {}

  static Group lattice(int dimension);
  static Group cyclic(std::int64_t order);
  static Group dihedral(std::int64_t order);
  static Group heisenberg();
  static Group free(int rank);
  static Group lamplighter();
  static Group product(const std::vector<Group>& factors);
  /// Parses descriptors such as "lattice(2)", "free(2)", "product(lattice(1),cyclic(5))".
  static Group parse(std::string_view descriptor);

  const GroupModel* model() const noexcept { return model_; }
  const std::string& descriptor() const { return model_->descriptor(); }
  bool finite() const { return model_->finite(); }
  bool abelian() const { return model_->abelian(); }

  Element identity() const { return Element(model_, model_->identity()); }

  Element multiply(const Element& g, const Element& h) const {
    check(g);
    check(h);
    Code out;
    model_->multiply(g.code(), h.code(), out);
    return Element(model_, std::move(out));
  }

  Element invert(const Element& g) const {
    check(g);
    return Element(model_, model_->invert(g.code()));
  }

  /// Canonicalizes `code`; throws DomainError if it is not an element.
  Element make(Code code) const {
    model_->canonicalize(code);
    return Element(model_, std::move(code));
  }

  Element parse_element(std::string_view text) const {
    detail::Cursor in(text);
    Code code = model_->parse(in);
    in.finish();
    return Element(model_, std::move(code));
  }

  std::string render(const Element& g) const {
    check(g);
    return g.str();
  }

  std::vector<Element> standard_generators() const {
    std::vector<Element> out;
    for (auto& c : model_->standard_generators()) out.emplace_back(model_, std::move(c));
    return out;
  }

  bool contains(const Element& g) const { return g.model() == model_; }

  void check(const Element& g) const {
    if (g.model() != model_)
      throw DomainError("element " + (g.model() ? g.str() + " of " + g.model()->descriptor() : std::string("<null>")) +
                        " is not in group " + descriptor());
  }

  friend bool operator==(const Group& a, const Group& b) { return a.model_ == b.model_; }

 private:
  const GroupModel* model_ = nullptr;
};

inline Group Element::group() const { return Group(group_); }

inline Element operator*(const Element& g, const Element& h) {
  if (g.model() != h.model()) throw DomainError("cannot multiply elements of different groups");
  Code out;
  g.model()->multiply(g.code(), h.code(), out);
  return Element(g.model(), std::move(out));
}

inline Element inverse(const Element& g) { return Element(g.model(), g.model()->invert(g.code())); }

inline std::ostream& operator<<(std::ostream& os, const Element& g) { return os << (g.model() ? g.str() : "<none>"); }

namespace detail {

class LatticeModel final : public GroupModel {
 public:
  explicit LatticeModel(int d) : GroupModel("lattice(" + std::to_string(d) + ")"), d_(d) {}
  bool finite() const override { return false; }
  bool abelian() const override { return true; }
  Code identity() const override { return Code(static_cast<std::size_t>(d_), 0); }
  void multiply(const Code& a, const Code& b, Code& out) const override {
    out.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  }
  Code invert(const Code& a) const override {
    Code out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
  }
  void canonicalize(Code& code) const override {
    if (code.size() != static_cast<std::size_t>(d_))
      throw DomainError("expected " + std::to_string(d_) + " coordinates for " + descriptor());
  }
  Code parse(Cursor& in) const override {
    Code code;
    if (d_ == 1 && in.peek() != '(') {
      code.push_back(in.integer());
      return code;
    }
    in.expect('(');
    code.push_back(in.integer());
    while (in.consume(',')) code.push_back(in.integer());
    if (code.size() != static_cast<std::size_t>(d_)) in.fail("expected " + std::to_string(d_) + " coordinates");
    in.expect(')');
    return code;
  }
  void render(const Code& a, std::string& out) const override {
    if (d_ == 1) {
      out += std::to_string(a[0]);
      return;
    }
    out += '(';
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(a[i]);
    }
    out += ')';
  }
  std::vector<Code> standard_generators() const override {
    std::vector<Code> gens;
    for (int i = 0; i < d_; ++i) {
      Code plus(static_cast<std::size_t>(d_), 0), minus(static_cast<std::size_t>(d_), 0);
      plus[i] = 1;
      minus[i] = -1;
      gens.push_back(plus);
      gens.push_back(minus);
    }
    return gens;
  }

 private:
  int d_;
};

class CyclicModel final : public GroupModel {
 public:
  explicit CyclicModel(std::int64_t q) : GroupModel("cyclic(" + std::to_string(q) + ")"), q_(q) {}
  bool finite() const override { return true; }
  bool abelian() const override { return true; }
  Code identity() const override { return Code{0}; }
  void multiply(const Code& a, const Code& b, Code& out) const override {
    out.assign({mod(a[0] + b[0], q_)});
  }
  Code invert(const Code& a) const override { return Code{mod(-a[0], q_)}; }
  void canonicalize(Code& code) const override {
    if (code.size() != 1) throw DomainError("expected one residue for " + descriptor());
    code[0] = mod(code[0], q_);
  }
  Code parse(Cursor& in) const override { return Code{mod(in.integer(), q_)}; }
  void render(const Code& a, std::string& out) const override { out += std::to_string(a[0]); }
  std::vector<Code> standard_generators() const override {
    if (q_ == 1) return {};
    if (q_ == 2) return {Code{1}};
    return {Code{1}, Code{q_ - 1}};
  }

 private:
  std::int64_t q_;
};

// Encoding (k, b) denotes s^b r^k, with r s = s r^{-1}.
class DihedralModel final : public GroupModel {
 public:
  explicit DihedralModel(std::int64_t q) : GroupModel("dihedral(" + std::to_string(q) + ")"), q_(q) {}
  bool finite() const override { return true; }
  bool abelian() const override { return q_ <= 2; }
  Code identity() const override { return Code{0, 0}; }
  void multiply(const Code& a, const Code& b, Code& out) const override {
    const std::int64_t k = b[1] ? mod(b[0] - a[0], q_) : mod(a[0] + b[0], q_);
    out.assign({k, a[1] ^ b[1]});
  }
  Code invert(const Code& a) const override {
    if (a[1]) return a;
    return Code{mod(-a[0], q_), 0};
  }
  void canonicalize(Code& code) const override {
    if (code.size() != 2 || (code[1] != 0 && code[1] != 1))
      throw DomainError("expected (rotation, reflection bit) for " + descriptor());
    code[0] = mod(code[0], q_);
  }
  Code parse(Cursor& in) const override {
    std::int64_t bit = 0;
    if (in.peek() == 's') {
      in.consume('s');
      bit = 1;
      if (in.at_end() || in.peek() == ';') return Code{0, 1};
    }
    if (!in.consume('r')) in.fail("expected 'r'");
    std::int64_t k = 1;
    if (in.consume('^')) k = in.integer();
    return Code{mod(k, q_), bit};
  }
  void render(const Code& a, std::string& out) const override {
    if (a[1]) out += "s ";
    out += "r^" + std::to_string(a[0]);
  }
  std::vector<Code> standard_generators() const override {
    std::vector<Code> gens;
    if (q_ > 1) gens.push_back(Code{1, 0});
    if (q_ > 2) gens.push_back(Code{q_ - 1, 0});
    gens.push_back(Code{0, 1});
    return gens;
  }

 private:
  std::int64_t q_;
};

// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab'): upper unitriangular matrices
// with a, b on the superdiagonal and c in the corner.
class HeisenbergModel final : public GroupModel {
 public:
  HeisenbergModel() : GroupModel("heisenberg") {}
  bool finite() const override { return false; }
  bool abelian() const override { return false; }
  Code identity() const override { return Code{0, 0, 0}; }
  void multiply(const Code& a, const Code& b, Code& out) const override {
    out.assign({a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]});
  }
  Code invert(const Code& a) const override { return Code{-a[0], -a[1], a[0] * a[1] - a[2]}; }
  void canonicalize(Code& code) const override {
    if (code.size() != 3) throw DomainError("expected an integer triple for heisenberg");
  }
  Code parse(Cursor& in) const override {
    in.expect('(');
    Code code{in.integer()};
    for (int i = 0; i < 2; ++i) {
      in.expect(',');
      code.push_back(in.integer());
    }
    in.expect(')');
    return code;
  }
  void render(const Code& a, std::string& out) const override {
    out += '(' + std::to_string(a[0]) + ',' + std::to_string(a[1]) + ',' + std::to_string(a[2]) + ')';
  }
  std::vector<Code> standard_generators() const override {
    return {Code{1, 0, 0}, Code{-1, 0, 0}, Code{0, 1, 0}, Code{0, -1, 0}};
  }
};

// Reduced words; letter 2g is generator g, 2g+1 its inverse.
class FreeModel final : public GroupModel {
 public:
  explicit FreeModel(int rank) : GroupModel("free(" + std::to_string(rank) + ")"), rank_(rank) {}
  bool finite() const override { return rank_ == 0; }
  bool abelian() const override { return rank_ <= 1; }
  Code identity() const override { return {}; }
  void multiply(const Code& a, const Code& b, Code& out) const override {
    out = a;
    for (auto letter : b) {
      if (!out.empty() && out.back() == (letter ^ 1))
        out.pop_back();
      else
        out.push_back(letter);
    }
  }
  Code invert(const Code& a) const override {
    Code out(a.rbegin(), a.rend());
    for (auto& letter : out) letter ^= 1;
    return out;
  }
  void canonicalize(Code& code) const override {
    Code reduced;
    for (auto letter : code) {
      if (letter < 0 || letter >= 2 * rank_) throw DomainError("letter out of range for " + descriptor());
      if (!reduced.empty() && reduced.back() == (letter ^ 1))
        reduced.pop_back();
      else
        reduced.push_back(letter);
    }
    code = std::move(reduced);
  }
  Code parse(Cursor& in) const override {
    Code code;
    if (in.consume('1')) return code;
    while (true) {
      const char c = in.peek();
      std::int64_t letter;
      if (c >= 'a' && c < 'a' + rank_)
        letter = 2 * (c - 'a');
      else if (c >= 'A' && c < 'A' + rank_)
        letter = 2 * (c - 'A') + 1;
      else
        break;
      in.advance(1);
      if (!code.empty() && code.back() == (letter ^ 1))
        code.pop_back();
      else
        code.push_back(letter);
    }
    if (!in.at_end() && in.peek() != ';') in.fail("expected generator letter");
    return code;
  }
  void render(const Code& a, std::string& out) const override {
    if (a.empty()) {
      out += '1';
      return;
    }
    for (auto letter : a) out += static_cast<char>(((letter & 1) ? 'A' : 'a') + letter / 2);
  }
  std::vector<Code> standard_generators() const override {
    std::vector<Code> gens;
    for (int g = 0; g < rank_; ++g) {
      gens.push_back(Code{2 * g});
      gens.push_back(Code{2 * g + 1});
    }
    return gens;
  }

 private:
  int rank_;
};

// Z_2 wreath Z. Encoding: sorted lit positions followed by the cursor.
// (f, p)(g, q) = (f xor (g shifted by p), p + q).
class LamplighterModel final : public GroupModel {
 public:
  LamplighterModel() : GroupModel("lamplighter") {}
  bool finite() const override { return false; }
  bool abelian() const override { return false; }
  Code identity() const override { return Code{0}; }
  void multiply(const Code& a, const Code& b, Code& out) const override {
    const std::int64_t p = a.back();
    out.clear();
    auto i = a.begin(), ie = a.end() - 1;
    auto j = b.begin(), je = b.end() - 1;
    while (i != ie || j != je) {
      if (j == je || (i != ie && *i < *j + p)) {
        out.push_back(*i++);
      } else if (i == ie || *j + p < *i) {
        out.push_back(*j++ + p);
      } else {
        ++i;
        ++j;
      }
    }
    out.push_back(p + b.back());
  }
  Code invert(const Code& a) const override {
    const std::int64_t p = a.back();
    Code out;
    for (auto it = a.begin(); it != a.end() - 1; ++it) out.push_back(*it - p);
    out.push_back(-p);
    return out;
  }
  void canonicalize(Code& code) const override {
    if (code.empty()) throw DomainError("lamplighter encoding needs a cursor position");
    const std::int64_t cursor = code.back();
    code.pop_back();
    std::sort(code.begin(), code.end());
    code.erase(std::unique(code.begin(), code.end()), code.end());
    code.push_back(cursor);
  }
  std::strong_ordering compare(const Code& a, const Code& b) const override {
    if (auto c = std::lexicographical_compare_three_way(a.begin(), a.end() - 1, b.begin(), b.end() - 1); c != 0)
      return c;
    return a.back() <=> b.back();
  }
  Code parse(Cursor& in) const override {
    Code code;
    in.expect('{');
    if (!in.consume('}')) {
      code.push_back(in.integer());
      while (in.consume(',')) code.push_back(in.integer());
      in.expect('}');
    }
    in.expect('@');
    code.push_back(in.integer());
    canonicalize(code);
    return code;
  }
  void render(const Code& a, std::string& out) const override {
    out += '{';
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(a[i]);
    }
    out += "}@" + std::to_string(a.back());
  }
  std::vector<Code> standard_generators() const override { return {Code{1}, Code{-1}, Code{0, 0}}; }
};

// Component encodings concatenated, each prefixed by its length.
class ProductModel final : public GroupModel {
 public:
  explicit ProductModel(std::vector<const GroupModel*> factors)
      : GroupModel(make_descriptor(factors)), factors_(std::move(factors)) {}

  bool finite() const override {
    return std::all_of(factors_.begin(), factors_.end(), [](auto* f) { return f->finite(); });
  }
  bool abelian() const override {
    return std::all_of(factors_.begin(), factors_.end(), [](auto* f) { return f->abelian(); });
  }
  Code identity() const override {
    std::vector<Code> parts;
    for (auto* f : factors_) parts.push_back(f->identity());
    return join(parts);
  }
  void multiply(const Code& a, const Code& b, Code& out) const override {
    auto pa = split(a), pb = split(b);
    std::vector<Code> parts(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) factors_[i]->multiply(pa[i], pb[i], parts[i]);
    out = join(parts);
  }
  Code invert(const Code& a) const override {
    auto pa = split(a);
    for (std::size_t i = 0; i < factors_.size(); ++i) pa[i] = factors_[i]->invert(pa[i]);
    return join(pa);
  }
  void canonicalize(Code& code) const override {
    auto parts = split(code);
    for (std::size_t i = 0; i < factors_.size(); ++i) factors_[i]->canonicalize(parts[i]);
    code = join(parts);
  }
  std::strong_ordering compare(const Code& a, const Code& b) const override {
    auto pa = split(a), pb = split(b);
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (auto c = factors_[i]->compare(pa[i], pb[i]); c != 0) return c;
    return std::strong_ordering::equal;
  }
  Code parse(Cursor& in) const override {
    std::vector<Code> parts;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) in.expect(';');
      parts.push_back(factors_[i]->parse(in));
    }
    return join(parts);
  }
  void render(const Code& a, std::string& out) const override {
    auto parts = split(a);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) out += ';';
      factors_[i]->render(parts[i], out);
    }
  }
  std::vector<Code> standard_generators() const override {
    std::vector<Code> gens;
    std::vector<Code> base;
    for (auto* f : factors_) base.push_back(f->identity());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      for (auto& g : factors_[i]->standard_generators()) {
        auto parts = base;
        parts[i] = g;
        gens.push_back(join(parts));
      }
    }
    return gens;
  }

  const std::vector<const GroupModel*>& factors() const noexcept { return factors_; }

 private:
  static std::string make_descriptor(const std::vector<const GroupModel*>& factors) {
    std::string d = "product(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) d += ',';
      d += factors[i]->descriptor();
    }
    return d + ")";
  }

  std::vector<Code> split(const Code& code) const {
    std::vector<Code> parts;
    parts.reserve(factors_.size());
    std::size_t at = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (at >= code.size()) throw DomainError("truncated encoding for " + descriptor());
      const auto len = code[at];
      if (len < 0 || at + 1 + static_cast<std::size_t>(len) > code.size())
        throw DomainError("bad component length for " + descriptor());
      parts.emplace_back(code.begin() + static_cast<std::ptrdiff_t>(at + 1),
                         code.begin() + static_cast<std::ptrdiff_t>(at + 1 + static_cast<std::size_t>(len)));
      at += 1 + static_cast<std::size_t>(len);
    }
    if (at != code.size()) throw DomainError("trailing data in encoding for " + descriptor());
    return parts;
  }

  static Code join(const std::vector<Code>& parts) {
    Code code;
    for (auto& p : parts) {
      code.push_back(static_cast<std::int64_t>(p.size()));
      code.insert(code.end(), p.begin(), p.end());
    }
    return code;
  }

  std::vector<const GroupModel*> factors_;
};

template <class Model, class... Args>
const GroupModel* intern(const std::string& key, Args&&... args) {
  static std::mutex lock;
  static std::map<std::string, std::unique_ptr<GroupModel>> registry;
  std::lock_guard guard(lock);
  auto& slot = registry[key];
  if (!slot) slot = std::make_unique<Model>(std::forward<Args>(args)...);
  return slot.get();
}

inline Group parse_group(Cursor& in) {
  const auto name = std::string(in.word());
  auto positive = [&](std::int64_t lo) {
    in.expect('(');
    const auto v = in.integer();
    if (v < lo) in.fail("parameter must be at least " + std::to_string(lo));
    in.expect(')');
    return v;
  };
  if (name == "lattice") return Group::lattice(static_cast<int>(positive(1)));
  if (name == "cyclic") return Group::cyclic(positive(1));
  if (name == "dihedral") return Group::dihedral(positive(1));
  if (name == "free") {
    const auto rank = positive(0);
    if (rank > 26) in.fail("free group rank above 26");
    return Group::free(static_cast<int>(rank));
  }
  if (name == "heisenberg") return Group::heisenberg();
  if (name == "lamplighter") return Group::lamplighter();
  if (name == "product") {
    in.expect('(');
    std::vector<Group> factors{parse_group(in)};
    while (in.consume(',')) factors.push_back(parse_group(in));
    in.expect(')');
    return Group::product(factors);
  }
  in.fail("unknown group family '" + name + "'");
}

}  // namespace detail

inline Group Group::lattice(int dimension) {
  if (dimension < 1) throw PreconditionError("lattice dimension must be positive");
  const auto key = "lattice(" + std::to_string(dimension) + ")";
  return Group(detail::intern<detail::LatticeModel>(key, dimension));
}

inline Group Group::cyclic(std::int64_t order) {
  if (order < 1) throw PreconditionError("cyclic order must be positive");
  const auto key = "cyclic(" + std::to_string(order) + ")";
  return Group(detail::intern<detail::CyclicModel>(key, order));
}

inline Group Group::dihedral(std::int64_t order) {
  if (order < 1) throw PreconditionError("dihedral order must be positive");
  const auto key = "dihedral(" + std::to_string(order) + ")";
  return Group(detail::intern<detail::DihedralModel>(key, order));
}

inline Group Group::heisenberg() { return Group(detail::intern<detail::HeisenbergModel>("heisenberg")); }

inline Group Group::free(int rank) {
  if (rank < 0 || rank > 26) throw PreconditionError("free group rank must lie in [0, 26]");
  const auto key = "free(" + std::to_string(rank) + ")";
  return Group(detail::intern<detail::FreeModel>(key, rank));
}

inline Group Group::lamplighter() { return Group(detail::intern<detail::LamplighterModel>("lamplighter")); }

inline Group Group::product(const std::vector<Group>& factors) {
  if (factors.empty()) throw PreconditionError("product needs at least one factor");
  std::vector<const GroupModel*> models;
  std::string key = "product(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    models.push_back(factors[i].model());
    if (i) key += ',';
    key += factors[i].descriptor();
  }
  key += ')';
  return Group(detail::intern<detail::ProductModel>(key, std::move(models)));
}

inline Group Group::parse(std::string_view descriptor) {
  detail::Cursor in(descriptor);
  Group g = detail::parse_group(in);
  in.finish();
  return g;
}

}  // namespace growthkit
