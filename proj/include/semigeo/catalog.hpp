// Built-in example monoids.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semigeo/monoid.hpp"
#include "semigeo/rewrite.hpp"

namespace semigeo::catalog {

  inline std::vector<std::string> letters(std::size_t rank) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < rank; ++i) {
      out.emplace_back(1, static_cast<char>('a' + i));
    }
    return out;
  }

  // ⟨b, c | bc = 1⟩
  inline MonoidPtr bicyclic(std::optional<std::vector<std::string>> gens
                            = std::nullopt) {
    Alphabet        a({"b", "c"});
    RewritingSystem rs(a, {{"bc", ""}});
    return std::make_shared<RewritingMonoid>(rs, gens);
  }

  inline MonoidPtr free_monoid(std::size_t rank) {
    return std::make_shared<RewritingMonoid>(
        RewritingSystem(Alphabet(letters(rank)), std::vector<Rule>{}));
  }

  // The free monoid on one generator s.
  inline MonoidPtr naturals() {
    return std::make_shared<RewritingMonoid>(
        RewritingSystem(Alphabet({"s"}), std::vector<Rule>{}));
  }

  // Letters commute: rules yx -> xy for x < y.
  inline MonoidPtr free_commutative(std::size_t rank) {
    Alphabet          a(letters(rank));
    std::vector<Rule> rules;
    for (Letter x = 0; x < rank; ++x) {
      for (Letter y = x + 1; y < rank; ++y) {
        rules.push_back({{y, x}, {x, y}});
      }
    }
    return std::make_shared<RewritingMonoid>(RewritingSystem(a, rules));
  }

  // ⟨p, q | pq = qp = 1⟩
  inline MonoidPtr integers() {
    Alphabet a({"p", "q"});
    return std::make_shared<RewritingMonoid>(
        RewritingSystem(a, {{"pq", ""}, {"qp", ""}}));
  }

  // The semigroup {a, 0} with a² = 0, identity adjoined.  Generated by {a}, or
  // by {a, 0} when `with_zero` is set.
  inline MonoidPtr a_squared_zero(bool with_zero = false) {
    std::vector<std::string> gens = {"a"};
    if (with_zero) {
      gens.emplace_back("0");
    }
    return std::make_shared<TableMonoid>(
        std::vector<std::string>{"a", "0"},
        std::vector<std::vector<std::uint32_t>>{{1, 1}, {1, 1}},
        std::nullopt,
        gens);
  }

  inline MonoidPtr cyclic_group(std::size_t n) {
    std::vector<std::string>                names;
    std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(std::to_string(i));
      for (std::size_t j = 0; j < n; ++j) {
        table[i][j] = static_cast<std::uint32_t>((i + j) % n);
      }
    }
    std::vector<std::string> gens;
    if (n > 1) {
      gens.emplace_back("1");
    }
    return std::make_shared<TableMonoid>(names, table, std::string("0"), gens);
  }

  inline MonoidPtr trivial_monoid() {
    return cyclic_group(1);
  }

  inline MonoidPtr transformation_monoid(
      std::size_t                                                     degree,
      std::vector<std::pair<std::string, std::vector<std::uint32_t>>> gens) {
    return std::make_shared<TransformationMonoid>(degree, gens);
  }

  // T_n generated by an n-cycle, a transposition and a rank n-1 idempotent.
  // T_1 is trivial; T_2 uses the transposition and a constant map.
  inline MonoidPtr full_transformation(std::size_t n) {
    std::vector<std::pair<std::string, std::vector<std::uint32_t>>> gens;
    if (n == 2) {
      gens = {{"t", {1, 0}}, {"e", {0, 0}}};
    } else if (n >= 3) {
      std::vector<std::uint32_t> cycle(n), swap(n), idem(n);
      for (std::size_t i = 0; i < n; ++i) {
        cycle[i] = static_cast<std::uint32_t>((i + 1) % n);
        swap[i]  = static_cast<std::uint32_t>(i);
        idem[i]  = static_cast<std::uint32_t>(i);
      }
      std::swap(swap[0], swap[1]);
      idem[1] = 0;
      gens    = {{"a", cycle}, {"t", swap}, {"e", idem}};
    }
    return transformation_monoid(n, gens);
  }

}  // namespace semigeo::catalog
