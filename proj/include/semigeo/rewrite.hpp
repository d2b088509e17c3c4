// Shortlex string rewriting with a confluence verifier.
//
// A RewritingSystem only accepts rules whose left-hand side is strictly
// greater than the right-hand side in shortlex order, so every rewriting
// sequence terminates.  check_complete() decides local confluence from the
// critical pairs; with termination that is confluence, and normal forms then
// solve the word problem of the presented monoid.  There is no completion:
// a system that fails is reported with a witness and left as is.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "semigeo/errors.hpp"

namespace semigeo {

  using Letter = std::uint32_t;
  using Word   = std::vector<Letter>;

  // Shortlex: shorter words first, then lexicographic in letter index order.
  inline bool shortlex_less(Word const& u, Word const& v) {
    if (u.size() != v.size()) {
      return u.size() < v.size();
    }
    return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
  }

  inline Word concat(Word const& u, Word const& v) {
    Word w;
    w.reserve(u.size() + v.size());
    w.insert(w.end(), u.begin(), u.end());
    w.insert(w.end(), v.begin(), v.end());
    return w;
  }

  // An ordered list of distinct generator symbols.  Symbols may be longer than
  // one character; in that case formatted words separate letters with '.'.
  class Alphabet {
   public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> symbols)
        : _symbols(std::move(symbols)) {
      for (std::size_t i = 0; i < _symbols.size(); ++i) {
        auto const& s = _symbols[i];
        if (s.empty() || s.find('.') != std::string::npos) {
          throw InvalidRule("invalid alphabet symbol \"" + s + "\"");
        }
        if (!_index.emplace(s, static_cast<Letter>(i)).second) {
          throw InvalidRule("duplicate alphabet symbol \"" + s + "\"");
        }
        _multichar = _multichar || s.size() > 1;
      }
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _symbols.size();
    }

    [[nodiscard]] std::vector<std::string> const& symbols() const noexcept {
      return _symbols;
    }

    [[nodiscard]] std::string const& symbol(Letter a) const {
      if (a >= _symbols.size()) {
        throw UnknownSymbol("letter index " + std::to_string(a)
                            + " is outside the alphabet");
      }
      return _symbols[a];
    }

    [[nodiscard]] std::optional<Letter> find(std::string_view s) const {
      auto it = _index.find(std::string(s));
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    // Dotted input is split on '.'; otherwise tokens are matched greedily,
    // longest symbol first.  The empty string is the empty word.
    [[nodiscard]] Word parse(std::string_view text) const {
      Word w;
      if (text.find('.') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
          auto stop = text.find('.', start);
          if (stop == std::string_view::npos) {
            stop = text.size();
          }
          auto token = text.substr(start, stop - start);
          auto a     = find(token);
          if (!a) {
            throw UnknownSymbol("unknown symbol \"" + std::string(token)
                                + "\" in \"" + std::string(text) + "\"");
          }
          w.push_back(*a);
          start = stop + 1;
        }
        return w;
      }
      std::size_t pos = 0;
      while (pos < text.size()) {
        std::optional<Letter> best;
        std::size_t           best_len = 0;
        for (std::size_t i = 0; i < _symbols.size(); ++i) {
          auto const& s = _symbols[i];
          if (s.size() > best_len && text.substr(pos, s.size()) == s) {
            best     = static_cast<Letter>(i);
            best_len = s.size();
          }
        }
        if (!best) {
          throw UnknownSymbol("unknown symbol at position " + std::to_string(pos)
                              + " in \"" + std::string(text) + "\"");
        }
        w.push_back(*best);
        pos += best_len;
      }
      return w;
    }

    [[nodiscard]] std::string format(Word const& w) const {
      std::string out;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (_multichar && i != 0) {
          out += '.';
        }
        out += symbol(w[i]);
      }
      return out;
    }

    void validate(Word const& w) const {
      for (auto a : w) {
        if (a >= _symbols.size()) {
          throw UnknownSymbol("letter index " + std::to_string(a)
                              + " is outside the alphabet");
        }
      }
    }

    friend bool operator==(Alphabet const& a, Alphabet const& b) {
      return a._symbols == b._symbols;
    }

   private:
    std::vector<std::string>                _symbols;
    std::unordered_map<std::string, Letter> _index;
    bool                                    _multichar = false;
  };

  struct Rule {
    Word lhs;
    Word rhs;

    friend bool operator==(Rule const&, Rule const&) = default;
  };

  struct CriticalPair {
    Word        peak;
    Word        reduct1;
    Word        reduct2;
    std::size_t rule1;
    std::size_t rule2;
  };

  struct Unverified {
    friend bool operator==(Unverified const&, Unverified const&) = default;
  };

  struct VerifiedComplete {
    friend bool operator==(VerifiedComplete const&, VerifiedComplete const&)
        = default;
  };

  struct FailedConfluence {
    Word peak;
    Word nf1;
    Word nf2;

    friend bool operator==(FailedConfluence const&, FailedConfluence const&)
        = default;
  };

  using Completeness = std::variant<Unverified, VerifiedComplete, FailedConfluence>;

  class RewritingSystem {
   public:
    RewritingSystem() = default;

    RewritingSystem(Alphabet alphabet, std::vector<Rule> rules)
        : _alphabet(std::move(alphabet)), _rules(std::move(rules)) {
      for (auto const& r : _rules) {
        if (r.lhs.empty()) {
          throw InvalidRule("rule with empty left-hand side");
        }
        _alphabet.validate(r.lhs);
        _alphabet.validate(r.rhs);
        if (!shortlex_less(r.rhs, r.lhs)) {
          throw InvalidRule("rule " + _alphabet.format(r.lhs) + " -> "
                            + _alphabet.format(r.rhs)
                            + " does not decrease in shortlex order");
        }
      }
    }

    // Convenience: rules given as (lhs, rhs) text pairs over `alphabet`.
    RewritingSystem(
        Alphabet                                             alphabet,
        std::vector<std::pair<std::string, std::string>> const& rules)
        : RewritingSystem(alphabet, parse_rules(alphabet, rules)) {}

    [[nodiscard]] Alphabet const& alphabet() const noexcept {
      return _alphabet;
    }

    [[nodiscard]] std::vector<Rule> const& rules() const noexcept {
      return _rules;
    }

    [[nodiscard]] Completeness const& completeness() const noexcept {
      return _completeness;
    }

    [[nodiscard]] bool is_verified_complete() const noexcept {
      return std::holds_alternative<VerifiedComplete>(_completeness);
    }

    // Leftmost-innermost rewriting: the redex whose right end comes first is
    // rewritten, ties going to the earlier rule.  The word is consumed letter
    // by letter onto a stack that is kept irreducible.
    [[nodiscard]] Word normalize(Word const& w) const {
      _alphabet.validate(w);
      Word out;
      out.reserve(w.size());
      Word pending(w.rbegin(), w.rend());
      while (!pending.empty()) {
        out.push_back(pending.back());
        pending.pop_back();
        for (auto const& r : _rules) {
          if (r.lhs.size() <= out.size()
              && std::equal(r.lhs.rbegin(), r.lhs.rend(), out.rbegin())) {
            out.resize(out.size() - r.lhs.size());
            pending.insert(pending.end(), r.rhs.rbegin(), r.rhs.rend());
            break;
          }
        }
      }
      return out;
    }

    [[nodiscard]] std::string normalize(std::string_view w) const {
      return _alphabet.format(normalize(_alphabet.parse(w)));
    }

    // A copy whose completeness field records the outcome of check_complete.
    [[nodiscard]] RewritingSystem verified() const;

    friend bool operator==(RewritingSystem const& a, RewritingSystem const& b) {
      return a._alphabet == b._alphabet && a._rules == b._rules;
    }

   private:
    static std::vector<Rule> parse_rules(
        Alphabet const&                                         alphabet,
        std::vector<std::pair<std::string, std::string>> const& rules) {
      std::vector<Rule> out;
      out.reserve(rules.size());
      for (auto const& [l, r] : rules) {
        out.push_back({alphabet.parse(l), alphabet.parse(r)});
      }
      return out;
    }

    Alphabet          _alphabet;
    std::vector<Rule> _rules;
    Completeness      _completeness = Unverified{};
  };

  // Every overlap ambiguity between left-hand sides: a proper suffix of one
  // equal to a proper prefix of another (including a rule with itself), and
  // every occurrence of one left-hand side inside another.  Each comes with
  // its two one-step reducts; reduct1 rewrites with rule1.
  inline std::vector<CriticalPair> critical_pairs(RewritingSystem const& rs) {
    std::vector<CriticalPair> out;
    auto const&               rules = rs.rules();
    for (std::size_t i = 0; i < rules.size(); ++i) {
      auto const& li = rules[i].lhs;
      for (std::size_t j = 0; j < rules.size(); ++j) {
        auto const& lj = rules[j].lhs;
        // Overlaps: li = x·u, lj = u·y with u nonempty and x, y nonempty.
        auto max_k = std::min(li.size(), lj.size());
        for (std::size_t k = 1; k < max_k; ++k) {
          if (!std::equal(li.end() - k, li.end(), lj.begin())) {
            continue;
          }
          Word tail(lj.begin() + k, lj.end());
          Word head(li.begin(), li.end() - k);
          out.push_back({concat(li, tail),
                         concat(rules[i].rhs, tail),
                         concat(head, rules[j].rhs),
                         i,
                         j});
        }
        // Containments: lj is a factor of li.
        if (i == j || lj.size() > li.size()) {
          continue;
        }
        for (std::size_t p = 0; p + lj.size() <= li.size(); ++p) {
          if (!std::equal(lj.begin(), lj.end(), li.begin() + p)) {
            continue;
          }
          Word r2(li.begin(), li.begin() + p);
          r2.insert(r2.end(), rules[j].rhs.begin(), rules[j].rhs.end());
          r2.insert(r2.end(), li.begin() + p + lj.size(), li.end());
          out.push_back({li, rules[i].rhs, std::move(r2), i, j});
        }
      }
    }
    return out;
  }

  // Newman's lemma: rules are terminating by construction, so joinability of
  // all critical pairs is equivalent to confluence.
  inline Completeness check_complete(RewritingSystem const& rs) {
    for (auto const& cp : critical_pairs(rs)) {
      auto nf1 = rs.normalize(cp.reduct1);
      auto nf2 = rs.normalize(cp.reduct2);
      if (nf1 != nf2) {
        return FailedConfluence{cp.peak, std::move(nf1), std::move(nf2)};
      }
    }
    return VerifiedComplete{};
  }

  inline RewritingSystem RewritingSystem::verified() const {
    RewritingSystem copy = *this;
    copy._completeness   = check_complete(*this);
    return copy;
  }

}  // namespace semigeo
