// Exact rationals and extended distances.

#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

#include "semigeo/errors.hpp"

namespace semigeo {

  using Rational = boost::rational<std::int64_t>;

  inline std::string to_string(Rational const& q) {
    if (q.denominator() == 1) {
      return std::to_string(q.numerator());
    }
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
  }

  namespace detail {
    inline std::int64_t parse_int(std::string_view s, std::string_view whole) {
      std::int64_t v   = 0;
      auto const*  end = s.data() + s.size();
      auto [ptr, ec]   = std::from_chars(s.data(), end, v);
      if (ec != std::errc() || ptr != end || s.empty()) {
        throw ParseError("invalid rational \"" + std::string(whole) + "\"");
      }
      return v;
    }
  }  // namespace detail

  // Accepts "p", "p/q" and "-p/q".
  inline Rational parse_rational(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
      return Rational(detail::parse_int(s, s));
    }
    auto num = detail::parse_int(s.substr(0, slash), s);
    auto den = detail::parse_int(s.substr(slash + 1), s);
    if (den == 0) {
      throw ParseError("zero denominator in \"" + std::string(s) + "\"");
    }
    return Rational(num, den);
  }

  // A distance in the extended nonnegative rationals, or a statement that the
  // true distance lies strictly beyond an exploration horizon.
  //
  // Infinite is a proof that no path exists.  ExceedsHorizon(h) says only that
  // the distance is > h, possibly infinite.
  class ExtDist {
   public:
    enum class Kind : std::uint8_t { finite, infinite, exceeds_horizon };

    constexpr ExtDist() = default;

    static ExtDist finite(Rational q) {
      ExtDist d;
      d._kind  = Kind::finite;
      d._value = q;
      return d;
    }

    static ExtDist finite(std::int64_t n) {
      return finite(Rational(n));
    }

    static ExtDist infinite() {
      ExtDist d;
      d._kind = Kind::infinite;
      return d;
    }

    static ExtDist exceeds(std::uint64_t horizon) {
      ExtDist d;
      d._kind    = Kind::exceeds_horizon;
      d._horizon = horizon;
      return d;
    }

    [[nodiscard]] Kind kind() const noexcept {
      return _kind;
    }
    [[nodiscard]] bool is_finite() const noexcept {
      return _kind == Kind::finite;
    }
    [[nodiscard]] bool is_infinite() const noexcept {
      return _kind == Kind::infinite;
    }
    [[nodiscard]] bool exceeds_horizon() const noexcept {
      return _kind == Kind::exceeds_horizon;
    }
    // Only meaningful when is_finite().
    [[nodiscard]] Rational const& value() const noexcept {
      return _value;
    }
    [[nodiscard]] std::uint64_t horizon() const noexcept {
      return _horizon;
    }

    friend bool operator==(ExtDist const& a, ExtDist const& b) {
      if (a._kind != b._kind) {
        return false;
      }
      switch (a._kind) {
        case Kind::finite:
          return a._value == b._value;
        case Kind::exceeds_horizon:
          return a._horizon == b._horizon;
        default:
          return true;
      }
    }

    // ∞ absorbs everything; a horizon bound absorbs finite summands, keeping
    // its horizon (the sum is still > h).
    friend ExtDist operator+(ExtDist const& a, ExtDist const& b) {
      if (a.is_infinite() || b.is_infinite()) {
        return infinite();
      }
      if (a.exceeds_horizon()) {
        return a;
      }
      if (b.exceeds_horizon()) {
        return b;
      }
      return finite(a._value + b._value);
    }

    friend ExtDist operator+(ExtDist const& a, Rational const& q) {
      return a + finite(q);
    }

    [[nodiscard]] std::string to_string() const {
      switch (_kind) {
        case Kind::finite:
          return semigeo::to_string(_value);
        case Kind::infinite:
          return "inf";
        default:
          return ">" + std::to_string(_horizon);
      }
    }

    friend std::ostream& operator<<(std::ostream& os, ExtDist const& d) {
      return os << d.to_string();
    }

   private:
    Kind          _kind    = Kind::finite;
    Rational      _value   = 0;
    std::uint64_t _horizon = 0;
  };

}  // namespace semigeo
