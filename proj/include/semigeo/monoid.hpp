// Finitely generated monoids behind one interface.
//
// Four backends supply identity, multiplication and an ordered generating
// set: complete rewriting systems, transformation monoids, multiplication
// tables and direct products.  Elements carry an owner id so that mixing
// elements of different backends is caught.  Everything downstream (balls,
// Cayley graphs, Green's relations) goes through MonoidBackend.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "semigeo/errors.hpp"
#include "semigeo/rewrite.hpp"

namespace semigeo {

  inline constexpr std::size_t kDefaultElementCap = 1'000'000;

  enum class BackendKind { rewriting, transformation, table, product };

  inline char const* to_string(BackendKind k) {
    switch (k) {
      case BackendKind::rewriting:
        return "rewriting";
      case BackendKind::transformation:
        return "transformation";
      case BackendKind::table:
        return "table";
      default:
        return "product";
    }
  }

  using ElementData = std::vector<std::uint32_t>;

  // Canonical payload: a normal-form word, an image array, a table index, or
  // a length-prefixed concatenation of two payloads.
  struct Element {
    std::uint64_t owner = 0;
    ElementData   data;

    friend bool operator==(Element const&, Element const&) = default;
    friend auto operator<=>(Element const&, Element const&) = default;
  };

  struct ElementHash {
    std::size_t operator()(Element const& x) const noexcept {
      std::size_t h = std::hash<std::uint64_t>{}(x.owner);
      for (auto v : x.data) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return h;
    }
  };

  template <typename T>
  using ElementMap = std::unordered_map<Element, T, ElementHash>;

  struct Generator {
    std::string name;
    Element     element;
  };

  class MonoidBackend {
   public:
    virtual ~MonoidBackend() = default;

    MonoidBackend(MonoidBackend const&)            = delete;
    MonoidBackend& operator=(MonoidBackend const&) = delete;

    [[nodiscard]] BackendKind kind() const noexcept {
      return _kind;
    }

    [[nodiscard]] std::uint64_t id() const noexcept {
      return _id;
    }

    [[nodiscard]] Element const& identity() const noexcept {
      return _identity;
    }

    [[nodiscard]] std::vector<Generator> const& generators() const noexcept {
      return _generators;
    }

    [[nodiscard]] Element multiply(Element const& x, Element const& y) const {
      check_owner(x);
      check_owner(y);
      return Element{_id, do_multiply(x.data, y.data)};
    }

    // Product of a sequence of generators (by index) applied on the right.
    [[nodiscard]] Element evaluate(Element x,
                                   std::vector<std::size_t> const& word) const {
      for (auto a : word) {
        x = multiply(x, _generators.at(a).element);
      }
      return x;
    }

    [[nodiscard]] std::string format(Element const& x) const {
      check_owner(x);
      return do_format(x.data);
    }

    [[nodiscard]] Element parse(std::string_view text) const {
      return make(do_parse(text));
    }

    // Wraps a raw payload, validating it.
    [[nodiscard]] Element make(ElementData data) const {
      do_validate(data);
      return Element{_id, std::move(data)};
    }

    void check_owner(Element const& x) const {
      if (x.owner != _id) {
        throw BackendMismatch("element does not belong to this "
                              + std::string(to_string(_kind)) + " monoid");
      }
    }

   protected:
    explicit MonoidBackend(BackendKind kind) : _kind(kind), _id(next_id()) {}

    void set_identity(ElementData data) {
      _identity = Element{_id, std::move(data)};
    }

    void add_generator(std::string name, ElementData data) {
      do_validate(data);
      _generators.push_back({std::move(name), Element{_id, std::move(data)}});
    }

    virtual ElementData do_multiply(ElementData const& x,
                                    ElementData const& y) const
        = 0;
    virtual std::string do_format(ElementData const& x) const   = 0;
    virtual ElementData do_parse(std::string_view text) const   = 0;
    virtual void        do_validate(ElementData const& x) const = 0;

   private:
    static std::uint64_t next_id() {
      static std::atomic<std::uint64_t> counter{1};
      return counter.fetch_add(1);
    }

    BackendKind            _kind;
    std::uint64_t          _id;
    Element                _identity;
    std::vector<Generator> _generators;
  };

  using MonoidPtr = std::shared_ptr<MonoidBackend const>;

  ////////////////////////////////////////////////////////////////////////
  // Rewriting backend
  ////////////////////////////////////////////////////////////////////////

  // Elements are normal forms of a verified-complete shortlex system.  The
  // generating set defaults to the alphabet letters; any list of words may be
  // supplied instead.
  class RewritingMonoid final : public MonoidBackend {
   public:
    explicit RewritingMonoid(
        RewritingSystem                                  rs,
        std::optional<std::vector<std::string>> const& generator_words
        = std::nullopt)
        : MonoidBackend(BackendKind::rewriting), _rs(rs.verified()) {
      if (auto const* f = std::get_if<FailedConfluence>(&_rs.completeness())) {
        auto const& a = _rs.alphabet();
        throw IncompleteSystem("rewriting system is not confluent: peak "
                               + a.format(f->peak) + " has normal forms \""
                               + a.format(f->nf1) + "\" and \"" + a.format(f->nf2)
                               + "\"");
      }
      set_identity({});
      if (generator_words) {
        _custom_generators = true;
        for (auto const& w : *generator_words) {
          add_generator(w, _rs.normalize(_rs.alphabet().parse(w)));
        }
      } else {
        for (Letter a = 0; a < _rs.alphabet().size(); ++a) {
          add_generator(_rs.alphabet().symbol(a), _rs.normalize(Word{a}));
        }
      }
    }

    [[nodiscard]] RewritingSystem const& system() const noexcept {
      return _rs;
    }

    [[nodiscard]] bool custom_generators() const noexcept {
      return _custom_generators;
    }

   protected:
    ElementData do_multiply(ElementData const& x,
                            ElementData const& y) const override {
      return _rs.normalize(concat(x, y));
    }

    std::string do_format(ElementData const& x) const override {
      return x.empty() ? std::string("1") : _rs.alphabet().format(x);
    }

    ElementData do_parse(std::string_view text) const override {
      if (text == "1" && !_rs.alphabet().find("1")) {
        return {};
      }
      try {
        return _rs.normalize(_rs.alphabet().parse(text));
      } catch (UnknownSymbol const& e) {
        throw InvalidElement(e.what());
      }
    }

    void do_validate(ElementData const& x) const override {
      try {
        if (_rs.normalize(x) != x) {
          throw InvalidElement("word " + _rs.alphabet().format(x)
                               + " is not in normal form");
        }
      } catch (UnknownSymbol const& e) {
        throw InvalidElement(e.what());
      }
    }

   private:
    RewritingSystem _rs;
    bool            _custom_generators = false;
  };

  ////////////////////////////////////////////////////////////////////////
  // Transformation backend
  ////////////////////////////////////////////////////////////////////////

  // Total maps on {0, ..., n-1} acting on the right: x·y means "x, then y",
  // so (x·y)[i] = y[x[i]].
  class TransformationMonoid final : public MonoidBackend {
   public:
    TransformationMonoid(
        std::size_t                                                degree,
        std::vector<std::pair<std::string, std::vector<std::uint32_t>>> const&
            generators)
        : MonoidBackend(BackendKind::transformation), _degree(degree) {
      ElementData id(degree);
      for (std::size_t i = 0; i < degree; ++i) {
        id[i] = static_cast<std::uint32_t>(i);
      }
      set_identity(std::move(id));
      for (auto const& [name, images] : generators) {
        add_generator(name, images);
      }
    }

    [[nodiscard]] std::size_t degree() const noexcept {
      return _degree;
    }

   protected:
    ElementData do_multiply(ElementData const& x,
                            ElementData const& y) const override {
      ElementData z(_degree);
      for (std::size_t i = 0; i < _degree; ++i) {
        z[i] = y[x[i]];
      }
      return z;
    }

    std::string do_format(ElementData const& x) const override {
      std::string out = "[";
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (i != 0) {
          out += ',';
        }
        out += std::to_string(x[i]);
      }
      return out + "]";
    }

    ElementData do_parse(std::string_view text) const override {
      if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        throw InvalidElement("transformation must look like [i,j,...]: \""
                             + std::string(text) + "\"");
      }
      ElementData out;
      auto        body = text.substr(1, text.size() - 2);
      std::size_t pos  = 0;
      while (pos < body.size()) {
        auto stop = body.find(',', pos);
        if (stop == std::string_view::npos) {
          stop = body.size();
        }
        auto token = body.substr(pos, stop - pos);
        try {
          out.push_back(static_cast<std::uint32_t>(std::stoul(std::string(token))));
        } catch (std::exception const&) {
          throw InvalidElement("bad image \"" + std::string(token) + "\"");
        }
        pos = stop + 1;
      }
      return out;
    }

    void do_validate(ElementData const& x) const override {
      if (x.size() != _degree) {
        throw InvalidElement("transformation has " + std::to_string(x.size())
                             + " images, expected " + std::to_string(_degree));
      }
      for (auto v : x) {
        if (v >= _degree) {
          throw InvalidElement("image " + std::to_string(v) + " out of range");
        }
      }
    }

   private:
    std::size_t _degree;
  };

  ////////////////////////////////////////////////////////////////////////
  // Table backend
  ////////////////////////////////////////////////////////////////////////

  // A finite semigroup given by its Cayley table.  When no identity is
  // supplied one is adjoined as an extra row and column (named "1", or "1'"
  // etc. if taken).  Associativity is checked exhaustively at construction.
  class TableMonoid final : public MonoidBackend {
   public:
    TableMonoid(std::vector<std::string>                     names,
                std::vector<std::vector<std::uint32_t>>      table,
                std::optional<std::string> const&            identity,
                std::vector<std::string> const&              generators)
        : MonoidBackend(BackendKind::table),
          _names(std::move(names)),
          _table(std::move(table)) {
      auto n = _names.size();
      if (_table.size() != n) {
        throw NotAssociative("table has " + std::to_string(_table.size())
                             + " rows for " + std::to_string(n) + " elements");
      }
      for (auto const& row : _table) {
        if (row.size() != n) {
          throw NotAssociative("table row has wrong length");
        }
        for (auto v : row) {
          if (v >= n) {
            throw NotAssociative("table entry out of range");
          }
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (!_index.emplace(_names[i], static_cast<std::uint32_t>(i)).second) {
          throw NotAssociative("duplicate element name \"" + _names[i] + "\"");
        }
      }
      check_associative();
      if (identity) {
        auto it = _index.find(*identity);
        if (it == _index.end()) {
          throw InvalidElement("unknown identity \"" + *identity + "\"");
        }
        auto e = it->second;
        for (std::uint32_t x = 0; x < n; ++x) {
          if (_table[e][x] != x || _table[x][e] != x) {
            throw InvalidElement("\"" + *identity + "\" is not an identity");
          }
        }
        _identity_index = e;
      } else {
        _adjoined       = true;
        _identity_index = static_cast<std::uint32_t>(n);
        std::string one = "1";
        while (_index.count(one) != 0) {
          one += "'";
        }
        _names.push_back(one);
        _index.emplace(one, _identity_index);
        for (std::uint32_t x = 0; x < n; ++x) {
          _table[x].push_back(x);
        }
        std::vector<std::uint32_t> row(n + 1);
        for (std::uint32_t x = 0; x <= n; ++x) {
          row[x] = x;
        }
        _table.push_back(std::move(row));
      }
      set_identity({_identity_index});
      for (auto const& g : generators) {
        auto it = _index.find(g);
        if (it == _index.end()) {
          throw InvalidElement("unknown generator \"" + g + "\"");
        }
        add_generator(g, {it->second});
      }
    }

    [[nodiscard]] std::vector<std::string> const& names() const noexcept {
      return _names;
    }

    [[nodiscard]] std::vector<std::vector<std::uint32_t>> const& table() const noexcept {
      return _table;
    }

    [[nodiscard]] bool adjoined_identity() const noexcept {
      return _adjoined;
    }

    [[nodiscard]] std::uint32_t identity_index() const noexcept {
      return _identity_index;
    }

   protected:
    ElementData do_multiply(ElementData const& x,
                            ElementData const& y) const override {
      return {_table[x[0]][y[0]]};
    }

    std::string do_format(ElementData const& x) const override {
      return _names[x[0]];
    }

    ElementData do_parse(std::string_view text) const override {
      auto it = _index.find(std::string(text));
      if (it == _index.end()) {
        throw InvalidElement("unknown element \"" + std::string(text) + "\"");
      }
      return {it->second};
    }

    void do_validate(ElementData const& x) const override {
      if (x.size() != 1 || x[0] >= _names.size()) {
        throw InvalidElement("table index out of range");
      }
    }

   private:
    void check_associative() const {
      auto n = _table.size();
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          auto xy = _table[x][y];
          for (std::size_t z = 0; z < n; ++z) {
            if (_table[xy][z] != _table[x][_table[y][z]]) {
              throw NotAssociative("(" + _names[x] + _names[y] + ")" + _names[z]
                                   + " != " + _names[x] + "(" + _names[y]
                                   + _names[z] + ")");
            }
          }
        }
      }
    }

    std::vector<std::string>                       _names;
    std::vector<std::vector<std::uint32_t>>        _table;
    std::unordered_map<std::string, std::uint32_t> _index;
    std::uint32_t                                  _identity_index = 0;
    bool                                           _adjoined       = false;
  };

  ////////////////////////////////////////////////////////////////////////
  // Balls and enumeration
  ////////////////////////////////////////////////////////////////////////

  struct LengthedElement {
    Element     element;
    std::size_t length;
  };

  // The out-ball {x : d_A(base, x) <= radius} in breadth-first discovery
  // order: ties are broken by generator order, then by discovery order.
  struct Ball {
    std::vector<LengthedElement> elements;
    ElementMap<std::size_t>      index;
    std::size_t                  radius = 0;

    [[nodiscard]] std::size_t size() const noexcept {
      return elements.size();
    }

    [[nodiscard]] std::optional<std::size_t> find(Element const& x) const {
      auto it = index.find(x);
      if (it == index.end()) {
        return std::nullopt;
      }
      return it->second;
    }
  };

  namespace detail {
    // Breadth-first search by right multiplication.  Returns false (leaving
    // the partial ball) when the ball would exceed `cap` elements; stops early
    // when a layer adds nothing.
    inline bool grow_ball(MonoidBackend const& m,
                          Ball&                ball,
                          std::size_t          radius,
                          std::size_t          cap,
                          bool*                closed = nullptr) {
      auto const& gens  = m.generators();
      std::size_t begin = 0;
      if (closed != nullptr) {
        *closed = false;
      }
      for (std::size_t depth = 0; depth < radius; ++depth) {
        std::size_t end = ball.elements.size();
        if (begin == end) {
          if (closed != nullptr) {
            *closed = true;
          }
          break;
        }
        for (std::size_t i = begin; i < end; ++i) {
          for (auto const& g : gens) {
            auto y = m.multiply(ball.elements[i].element, g.element);
            if (ball.index.count(y) == 0) {
              if (ball.elements.size() >= cap) {
                return false;
              }
              ball.index.emplace(y, ball.elements.size());
              ball.elements.push_back({std::move(y), depth + 1});
            }
          }
        }
        begin = end;
      }
      if (closed != nullptr && begin == ball.elements.size()) {
        *closed = true;
      }
      return true;
    }
  }  // namespace detail

  inline Ball enumerate_out_ball(MonoidBackend const& m,
                                 std::size_t          radius,
                                 std::size_t          cap = kDefaultElementCap,
                                 std::optional<Element> const& base
                                 = std::nullopt) {
    Ball ball;
    ball.radius = radius;
    auto start  = base ? *base : m.identity();
    m.check_owner(start);
    ball.index.emplace(start, 0);
    ball.elements.push_back({std::move(start), 0});
    if (!detail::grow_ball(m, ball, radius, cap)) {
      throw CapExceeded("out-ball of radius " + std::to_string(radius)
                            + " has more than " + std::to_string(cap)
                            + " elements",
                        cap);
    }
    return ball;
  }

  // All elements in breadth-first order, or nullopt when the monoid has more
  // than `cap` elements (it may still be finite).
  inline std::optional<std::vector<Element>> enumerate_all(
      MonoidBackend const& m,
      std::size_t          cap = kDefaultElementCap) {
    Ball ball;
    ball.index.emplace(m.identity(), 0);
    ball.elements.push_back({m.identity(), 0});
    bool closed = false;
    // A radius of `cap` is enough: each nonempty layer adds an element.
    if (!detail::grow_ball(m, ball, cap, cap, &closed) || !closed) {
      return std::nullopt;
    }
    std::vector<Element> out;
    out.reserve(ball.size());
    for (auto& le : ball.elements) {
      out.push_back(std::move(le.element));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Direct products
  ////////////////////////////////////////////////////////////////////////

  // How the generating set of M1 × M2 is formed.
  //   union:   {(a,1) : a ∈ A1} ∪ {(1,b) : b ∈ A2}
  //   fibered: {(a,g) : a ∈ A1, g ∈ M2}, requires M2 finite
  enum class ProductGenerators { union_set, fibered };

  class ProductMonoid final : public MonoidBackend {
   public:
    ProductMonoid(MonoidPtr         left,
                  MonoidPtr         right,
                  ProductGenerators mode = ProductGenerators::union_set,
                  std::size_t       cap  = kDefaultElementCap)
        : MonoidBackend(BackendKind::product),
          _left(std::move(left)),
          _right(std::move(right)),
          _mode(mode) {
      set_identity(pack(_left->identity().data, _right->identity().data));
      if (mode == ProductGenerators::union_set) {
        for (auto const& a : _left->generators()) {
          add_packed(a.element, _right->identity());
        }
        for (auto const& b : _right->generators()) {
          add_packed(_left->identity(), b.element);
        }
      } else {
        auto all = enumerate_all(*_right, cap);
        if (!all) {
          throw NotFinite("right factor of a fibered product is not finite within "
                          + std::to_string(cap) + " elements");
        }
        for (auto const& a : _left->generators()) {
          for (auto const& g : *all) {
            add_packed(a.element, g);
          }
        }
      }
    }

    [[nodiscard]] MonoidPtr const& left() const noexcept {
      return _left;
    }
    [[nodiscard]] MonoidPtr const& right() const noexcept {
      return _right;
    }
    [[nodiscard]] ProductGenerators mode() const noexcept {
      return _mode;
    }

    [[nodiscard]] Element pair(Element const& x, Element const& y) const {
      _left->check_owner(x);
      _right->check_owner(y);
      return make(pack(x.data, y.data));
    }

    [[nodiscard]] Element first(Element const& p) const {
      check_owner(p);
      return Element{_left->id(), unpack(p.data).first};
    }

    [[nodiscard]] Element second(Element const& p) const {
      check_owner(p);
      return Element{_right->id(), unpack(p.data).second};
    }

   protected:
    ElementData do_multiply(ElementData const& x,
                            ElementData const& y) const override {
      auto [x1, x2] = unpack(x);
      auto [y1, y2] = unpack(y);
      auto z1       = _left->multiply(Element{_left->id(), std::move(x1)},
                                Element{_left->id(), std::move(y1)});
      auto z2       = _right->multiply(Element{_right->id(), std::move(x2)},
                                 Element{_right->id(), std::move(y2)});
      return pack(z1.data, z2.data);
    }

    std::string do_format(ElementData const& x) const override {
      auto [a, b] = unpack(x);
      return "(" + _left->format(Element{_left->id(), std::move(a)}) + ","
             + _right->format(Element{_right->id(), std::move(b)}) + ")";
    }

    // "(x,y)" with the split at the top-level comma.
    ElementData do_parse(std::string_view text) const override {
      if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
        throw InvalidElement("product element must look like (x,y): \""
                             + std::string(text) + "\"");
      }
      auto body  = text.substr(1, text.size() - 2);
      int  depth = 0;
      for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '(' || c == '[') {
          ++depth;
        } else if (c == ')' || c == ']') {
          --depth;
        } else if (c == ',' && depth == 0) {
          auto a = _left->parse(body.substr(0, i));
          auto b = _right->parse(body.substr(i + 1));
          return pack(a.data, b.data);
        }
      }
      throw InvalidElement("product element without top-level comma: \""
                           + std::string(text) + "\"");
    }

    void do_validate(ElementData const& x) const override {
      if (x.empty() || x[0] + 1 > x.size()) {
        throw InvalidElement("malformed product payload");
      }
      auto [a, b] = unpack(x);
      (void) _left->make(std::move(a));
      (void) _right->make(std::move(b));
    }

   private:
    static ElementData pack(ElementData const& a, ElementData const& b) {
      ElementData out;
      out.reserve(1 + a.size() + b.size());
      out.push_back(static_cast<std::uint32_t>(a.size()));
      out.insert(out.end(), a.begin(), a.end());
      out.insert(out.end(), b.begin(), b.end());
      return out;
    }

    static std::pair<ElementData, ElementData> unpack(ElementData const& x) {
      auto n = x[0];
      return {ElementData(x.begin() + 1, x.begin() + 1 + n),
              ElementData(x.begin() + 1 + n, x.end())};
    }

    void add_packed(Element const& a, Element const& b) {
      auto data = pack(a.data, b.data);
      auto name = do_format(data);
      add_generator(std::move(name), std::move(data));
    }

    MonoidPtr         _left;
    MonoidPtr         _right;
    ProductGenerators _mode;
  };

  inline MonoidPtr direct_product(MonoidPtr         m1,
                                  MonoidPtr         m2,
                                  ProductGenerators mode = ProductGenerators::union_set,
                                  std::size_t       cap  = kDefaultElementCap) {
    return std::make_shared<ProductMonoid>(std::move(m1), std::move(m2), mode, cap);
  }

  ////////////////////////////////////////////////////////////////////////
  // Finite monoids with precomputed tables
  ////////////////////////////////////////////////////////////////////////

  // A finite monoid, fully enumerated, with its multiplication table by
  // element index.  Index 0 is the identity (breadth-first order).
  class FiniteMonoid {
   public:
    static FiniteMonoid from(MonoidPtr m, std::size_t cap = kDefaultElementCap) {
      auto all = enumerate_all(*m, cap);
      if (!all) {
        throw NotFinite("monoid is not finite within " + std::to_string(cap)
                        + " elements (raise --cap)");
      }
      FiniteMonoid fm;
      fm._backend  = std::move(m);
      fm._elements = std::move(*all);
      auto n       = fm._elements.size();
      for (std::size_t i = 0; i < n; ++i) {
        fm._index.emplace(fm._elements[i], i);
      }
      fm._table.resize(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          fm._table[i * n + j] = static_cast<std::uint32_t>(
              fm._index.at(fm._backend->multiply(fm._elements[i], fm._elements[j])));
        }
      }
      for (auto const& g : fm._backend->generators()) {
        fm._generators.push_back(fm._index.at(g.element));
      }
      return fm;
    }

    [[nodiscard]] MonoidPtr const& backend() const noexcept {
      return _backend;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _elements.size();
    }
    [[nodiscard]] std::vector<Element> const& elements() const noexcept {
      return _elements;
    }
    [[nodiscard]] Element const& element(std::size_t i) const {
      return _elements.at(i);
    }
    [[nodiscard]] std::size_t product(std::size_t i, std::size_t j) const {
      return _table[i * _elements.size() + j];
    }
    [[nodiscard]] std::size_t identity() const noexcept {
      return 0;
    }
    // Generator indices, in generator order (duplicates possible).
    [[nodiscard]] std::vector<std::size_t> const& generators() const noexcept {
      return _generators;
    }
    [[nodiscard]] std::size_t index_of(Element const& x) const {
      auto it = _index.find(x);
      if (it == _index.end()) {
        throw InvalidElement("element is not in the monoid");
      }
      return it->second;
    }
    [[nodiscard]] std::string name(std::size_t i) const {
      return _backend->format(_elements.at(i));
    }

   private:
    MonoidPtr                  _backend;
    std::vector<Element>       _elements;
    ElementMap<std::size_t>    _index;
    std::vector<std::uint32_t> _table;
    std::vector<std::size_t>   _generators;
  };

}  // namespace semigeo
