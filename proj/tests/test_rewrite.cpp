#include <map>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "semigeo/rewrite.hpp"

using namespace semigeo;

namespace {

  RewritingSystem make(std::vector<std::string> alphabet,
                       std::vector<std::pair<std::string, std::string>> rules) {
    return RewritingSystem(Alphabet(std::move(alphabet)), rules);
  }

  // Every word reachable by one rewrite anywhere, with any rule.
  std::vector<Word> one_step(RewritingSystem const& rs, Word const& w) {
    std::vector<Word> out;
    for (auto const& r : rs.rules()) {
      for (std::size_t p = 0; p + r.lhs.size() <= w.size(); ++p) {
        if (std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + p)) {
          Word v(w.begin(), w.begin() + p);
          v.insert(v.end(), r.rhs.begin(), r.rhs.end());
          v.insert(v.end(), w.begin() + p + r.lhs.size(), w.end());
          out.push_back(std::move(v));
        }
      }
    }
    return out;
  }

  // All irreducible descendants under every strategy (exhaustive, memoized).
  std::set<Word> const& irreducible_descendants(RewritingSystem const& rs,
                                                Word const&            w,
                                                std::map<Word, std::set<Word>>& memo) {
    auto it = memo.find(w);
    if (it != memo.end()) {
      return it->second;
    }
    std::set<Word> result;
    auto           next = one_step(rs, w);
    if (next.empty()) {
      result.insert(w);
    }
    for (auto const& v : next) {
      auto const& sub = irreducible_descendants(rs, v, memo);
      result.insert(sub.begin(), sub.end());
    }
    return memo.emplace(w, std::move(result)).first->second;
  }

  std::vector<Word> all_words(std::size_t alphabet_size, std::size_t max_len) {
    std::vector<Word> out = {Word{}};
    std::vector<Word> layer = {Word{}};
    for (std::size_t n = 1; n <= max_len; ++n) {
      std::vector<Word> next;
      for (auto const& w : layer) {
        for (Letter a = 0; a < alphabet_size; ++a) {
          auto v = w;
          v.push_back(a);
          next.push_back(v);
        }
      }
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  bool brute_force_confluent(RewritingSystem const& rs, std::size_t max_len) {
    std::map<Word, std::set<Word>> memo;
    for (auto const& w : all_words(rs.alphabet().size(), max_len)) {
      if (irreducible_descendants(rs, w, memo).size() != 1) {
        return false;
      }
    }
    return true;
  }

}  // namespace

TEST(Rewrite, NormalizeBicyclic) {
  auto rs = make({"b", "c"}, {{"bc", ""}});
  EXPECT_EQ(rs.normalize(std::string_view("bc")), "");
  EXPECT_EQ(rs.normalize(std::string_view("")), "");
  EXPECT_EQ(rs.normalize(std::string_view("bbcc")), "");
  EXPECT_EQ(rs.normalize(std::string_view("cbbc")), "cb");
}

TEST(Rewrite, NormalizeRejectsUnknownSymbol) {
  auto rs = make({"b", "c"}, {{"bc", ""}});
  EXPECT_THROW((void) rs.normalize(std::string_view("bx")), UnknownSymbol);
  EXPECT_THROW((void) rs.normalize(Word{0, 7}), UnknownSymbol);
}

TEST(Rewrite, RulesMustDecreaseInShortlex) {
  EXPECT_THROW(make({"a", "b"}, {{"ab", "ba"}}), InvalidRule);
  EXPECT_THROW(make({"a", "b"}, {{"a", "ab"}}), InvalidRule);
  EXPECT_THROW(make({"a", "b"}, {{"", "a"}}), InvalidRule);
  EXPECT_NO_THROW(make({"a", "b"}, {{"ba", "ab"}}));
}

TEST(Rewrite, MulticharSymbols) {
  Alphabet a({"x1", "x", "y"});
  EXPECT_EQ(a.parse("x1xy"), (Word{0, 1, 2}));
  EXPECT_EQ(a.parse("x.x1.y"), (Word{1, 0, 2}));
  EXPECT_EQ(a.format(Word{1, 0}), "x.x1");
  EXPECT_THROW(Alphabet({"a", "a"}), InvalidRule);
}

TEST(Rewrite, CriticalPairs) {
  EXPECT_TRUE(critical_pairs(make({"b", "c"}, {{"bc", ""}})).empty());
  EXPECT_TRUE(critical_pairs(make({"a", "b"}, {{"ba", "ab"}})).empty());

  auto rs  = make({"a", "b"}, {{"ab", "a"}, {"ba", "b"}});
  auto cps = critical_pairs(rs);
  auto a   = rs.alphabet();
  bool found = false;
  for (auto const& cp : cps) {
    if (a.format(cp.peak) == "aba") {
      found = true;
      EXPECT_EQ(a.format(cp.reduct1), "aa");
      EXPECT_EQ(a.format(cp.reduct2), "ab");
      EXPECT_EQ(rs.normalize(cp.reduct1), a.parse("aa"));
      EXPECT_EQ(rs.normalize(cp.reduct2), a.parse("a"));
    }
  }
  EXPECT_TRUE(found);
}

TEST(Rewrite, CriticalPairsIncludeContainments) {
  auto rs  = make({"a", "b"}, {{"aba", "b"}, {"b", "a"}});
  auto cps = critical_pairs(rs);
  bool found = false;
  for (auto const& cp : cps) {
    if (cp.rule1 == 0 && cp.rule2 == 1 && cp.peak == rs.alphabet().parse("aba")) {
      found = true;
      EXPECT_EQ(cp.reduct1, rs.alphabet().parse("b"));
      EXPECT_EQ(cp.reduct2, rs.alphabet().parse("aaa"));
    }
  }
  EXPECT_TRUE(found);
}

TEST(Rewrite, CheckComplete) {
  EXPECT_TRUE(std::holds_alternative<VerifiedComplete>(
      check_complete(make({"b", "c"}, {{"bc", ""}}))));
  EXPECT_TRUE(std::holds_alternative<VerifiedComplete>(
      check_complete(make({"p", "q"}, {{"pq", ""}, {"qp", ""}}))));
  EXPECT_TRUE(std::holds_alternative<VerifiedComplete>(
      check_complete(make({"a", "b"}, {{"ba", "ab"}}))));

  auto rs = make({"a", "b"}, {{"ab", "a"}, {"ba", "b"}});
  auto v  = check_complete(rs);
  ASSERT_TRUE(std::holds_alternative<FailedConfluence>(v));
  auto const& f = std::get<FailedConfluence>(v);
  EXPECT_EQ(rs.alphabet().format(f.peak), "aba");
  EXPECT_EQ(rs.alphabet().format(f.nf1), "aa");
  EXPECT_EQ(rs.alphabet().format(f.nf2), "a");
  EXPECT_FALSE(rs.verified().is_verified_complete());
}

TEST(Rewrite, AgreesWithBruteForceJoinability) {
  std::vector<RewritingSystem> systems = {
      make({"b", "c"}, {{"bc", ""}}),
      make({"a", "b"}, {{"ba", "ab"}}),
      make({"p", "q"}, {{"pq", ""}, {"qp", ""}}),
      make({"a", "b"}, {{"ab", "a"}, {"ba", "b"}}),
      make({"a", "b", "c"}, {{"ba", "ab"}, {"ca", "ac"}, {"cb", "bc"}}),
      make({"a"}, {{"aaa", "a"}}),
      make({"a", "b"}, {{"aa", ""}, {"bb", ""}, {"bab", "aba"}}),
      make({"a", "b"}, {{"aa", "a"}, {"ab", "b"}}),
      make({"a", "b"}, {{"aa", "b"}, {"bb", "a"}}),
  };
  for (auto const& rs : systems) {
    bool verified = std::holds_alternative<VerifiedComplete>(check_complete(rs));
    EXPECT_EQ(verified, brute_force_confluent(rs, 6))
        << "system with " << rs.rules().size() << " rules";
  }
}

TEST(Rewrite, NormalizeProperties) {
  std::vector<RewritingSystem> systems = {
      make({"b", "c"}, {{"bc", ""}}),
      make({"a", "b", "c"}, {{"ba", "ab"}, {"ca", "ac"}, {"cb", "bc"}}),
      make({"p", "q"}, {{"pq", ""}, {"qp", ""}}),
      make({"a", "b"}, {{"aa", ""}, {"bb", ""}, {"bab", "aba"}}),
  };
  for (auto const& rs : systems) {
    ASSERT_TRUE(std::holds_alternative<VerifiedComplete>(check_complete(rs)));
    auto words = all_words(rs.alphabet().size(), 3);
    for (auto const& w : all_words(rs.alphabet().size(), 6)) {
      auto n = rs.normalize(w);
      EXPECT_EQ(rs.normalize(n), n);
      EXPECT_TRUE(n == w || shortlex_less(n, w));
    }
    for (auto const& u : words) {
      for (auto const& v : words) {
        EXPECT_EQ(rs.normalize(concat(u, v)),
                  rs.normalize(concat(rs.normalize(u), rs.normalize(v))));
      }
    }
  }
}
