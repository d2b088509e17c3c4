// JSON descriptions of monoids, spaces, maps and partitions.
//
// Monoid files carry a "kind" and a kind-specific payload:
//
//   {"kind": "rewriting", "alphabet": ["b", "c"], "rules": [["bc", ""]],
//    "generators": ["b", "c", "cb"]}                       generators optional
//   {"kind": "transformation", "degree": 2,
//    "generators": [{"name": "s", "images": [1, 0]}]}
//   {"kind": "table", "elements": ["a", "0"], "table": [["0", "0"], ["0", "0"]],
//    "identity": null, "generators": ["a"]}                 null adjoins "1"
//   {"kind": "product", "left": {...}, "right": {...}, "generators": "union"}
//
// A product factor may also be a path, resolved against the including file.
// Space files are {"points": [...], "dist": [[0, "1/2", null], ...]} with
// null for ∞; map files are an array of target names in source order, or an
// object from source names to target names.

#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "semigeo/errors.hpp"
#include "semigeo/geometry.hpp"
#include "semigeo/monoid.hpp"
#include "semigeo/rational.hpp"
#include "semigeo/rewrite.hpp"

namespace semigeo {

  using Json = nlohmann::ordered_json;

  namespace detail {
    inline std::string at(std::string const& where, std::string const& msg) {
      return where + ": " + msg;
    }

    inline Json const& field(Json const& j, char const* key, std::string const& where) {
      if (!j.is_object()) {
        throw ParseError(at(where, "expected an object"));
      }
      auto it = j.find(key);
      if (it == j.end()) {
        throw ParseError(at(where, std::string("missing \"") + key + "\""));
      }
      return *it;
    }

    inline std::string string_at(Json const& j, std::string const& where) {
      if (!j.is_string()) {
        throw ParseError(at(where, "expected a string"));
      }
      return j.get<std::string>();
    }

    inline std::vector<std::string> strings_at(Json const& j, std::string const& where) {
      if (!j.is_array()) {
        throw ParseError(at(where, "expected an array of strings"));
      }
      std::vector<std::string> out;
      for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(string_at(j[i], where + "/" + std::to_string(i)));
      }
      return out;
    }

    inline std::uint64_t natural_at(Json const& j, std::string const& where) {
      if (!j.is_number_unsigned()) {
        throw ParseError(at(where, "expected a natural number"));
      }
      return j.get<std::uint64_t>();
    }

    // "line L, column C" for a byte offset.
    inline std::string position(std::string const& text, std::size_t offset) {
      std::size_t line = 1, col = 1;
      for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      return "line " + std::to_string(line) + ", column " + std::to_string(col);
    }
  }  // namespace detail

  inline Json parse_json_text(std::string const& text, std::string const& origin) {
    try {
      return Json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      auto pos = e.byte == 0 ? 0 : e.byte - 1;
      std::string msg = e.what();
      auto        cut = msg.find("syntax error");
      throw ParseError(origin + ":" + detail::position(text, pos) + ": "
                       + (cut == std::string::npos ? msg : msg.substr(cut)));
    }
  }

  inline std::string read_text(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw ParseError(path.string() + ": cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  inline Json read_json_file(std::filesystem::path const& path) {
    return parse_json_text(read_text(path), path.filename().string());
  }

  ////////////////////////////////////////////////////////////////////////
  // Monoids
  ////////////////////////////////////////////////////////////////////////

  inline MonoidPtr monoid_from_json(Json const&                  j,
                                    std::string const&           where = "",
                                    std::filesystem::path const& dir   = {},
                                    std::size_t                  cap   = kDefaultElementCap);

  namespace detail {
    inline MonoidPtr rewriting_from_json(Json const& j, std::string const& where) {
      auto     symbols = strings_at(field(j, "alphabet", where), where + "/alphabet");
      Alphabet a;
      try {
        a = Alphabet(symbols);
      } catch (Error const& e) {
        throw ParseError(at(where + "/alphabet", e.what()));
      }
      auto const& rj      = field(j, "rules", where);
      if (!rj.is_array()) {
        throw ParseError(at(where + "/rules", "expected an array of [lhs, rhs] pairs"));
      }
      std::vector<Rule> rules;
      for (std::size_t i = 0; i < rj.size(); ++i) {
        auto w  = where + "/rules/" + std::to_string(i);
        auto pr = strings_at(rj[i], w);
        if (pr.size() != 2) {
          throw ParseError(at(w, "a rule is a pair [lhs, rhs]"));
        }
        try {
          rules.push_back({a.parse(pr[0]), a.parse(pr[1])});
          (void) RewritingSystem(a, {rules.back()});
        } catch (Error const& e) {
          throw ParseError(at(w, e.what()));
        }
      }
      std::optional<std::vector<std::string>> gens;
      if (j.contains("generators")) {
        gens = strings_at(j["generators"], where + "/generators");
      }
      try {
        return std::make_shared<RewritingMonoid>(RewritingSystem(a, rules), gens);
      } catch (Error const& e) {
        throw ParseError(at(where, e.what()));
      }
    }

    inline MonoidPtr transformation_from_json(Json const& j, std::string const& where) {
      auto        degree = natural_at(field(j, "degree", where), where + "/degree");
      auto const& gj     = field(j, "generators", where);
      if (!gj.is_array()) {
        throw ParseError(at(where + "/generators", "expected an array"));
      }
      std::vector<std::pair<std::string, std::vector<std::uint32_t>>> gens;
      for (std::size_t i = 0; i < gj.size(); ++i) {
        auto        w  = where + "/generators/" + std::to_string(i);
        auto        nm = string_at(field(gj[i], "name", w), w + "/name");
        auto const& im = field(gj[i], "images", w);
        if (!im.is_array()) {
          throw ParseError(at(w + "/images", "expected an array"));
        }
        std::vector<std::uint32_t> images;
        for (std::size_t k = 0; k < im.size(); ++k) {
          images.push_back(static_cast<std::uint32_t>(
              natural_at(im[k], w + "/images/" + std::to_string(k))));
        }
        gens.emplace_back(nm, images);
      }
      try {
        return std::make_shared<TransformationMonoid>(degree, gens);
      } catch (Error const& e) {
        throw ParseError(at(where, e.what()));
      }
    }

    inline MonoidPtr table_from_json(Json const& j, std::string const& where) {
      auto names = strings_at(field(j, "elements", where), where + "/elements");
      std::unordered_map<std::string, std::uint32_t> index;
      for (std::size_t i = 0; i < names.size(); ++i) {
        index.emplace(names[i], static_cast<std::uint32_t>(i));
      }
      auto const& tj = field(j, "table", where);
      if (!tj.is_array()) {
        throw ParseError(at(where + "/table", "expected an array of rows"));
      }
      std::vector<std::vector<std::uint32_t>> table;
      for (std::size_t r = 0; r < tj.size(); ++r) {
        auto w   = where + "/table/" + std::to_string(r);
        auto row = strings_at(tj[r], w);
        table.emplace_back();
        for (std::size_t c = 0; c < row.size(); ++c) {
          auto it = index.find(row[c]);
          if (it == index.end()) {
            throw ParseError(at(w + "/" + std::to_string(c), "unknown element \"" + row[c] + "\""));
          }
          table.back().push_back(it->second);
        }
      }
      std::optional<std::string> identity;
      if (j.contains("identity") && !j["identity"].is_null()) {
        identity = string_at(j["identity"], where + "/identity");
      }
      auto gens = strings_at(field(j, "generators", where), where + "/generators");
      try {
        return std::make_shared<TableMonoid>(names, table, identity, gens);
      } catch (Error const& e) {
        throw ParseError(at(where, e.what()));
      }
    }

    inline MonoidPtr factor_from_json(Json const&                  j,
                                      std::string const&           where,
                                      std::filesystem::path const& dir,
                                      std::size_t                  cap) {
      if (j.is_string()) {
        auto path = dir / j.get<std::string>();
        return monoid_from_json(read_json_file(path), path.filename().string(), path.parent_path(),
                                cap);
      }
      return monoid_from_json(j, where, dir, cap);
    }
  }  // namespace detail

  inline MonoidPtr monoid_from_json(Json const&                  j,
                                    std::string const&           where,
                                    std::filesystem::path const& dir,
                                    std::size_t                  cap) {
    auto kind = detail::string_at(detail::field(j, "kind", where), where + "/kind");
    if (kind == "rewriting") {
      return detail::rewriting_from_json(j, where);
    }
    if (kind == "transformation") {
      return detail::transformation_from_json(j, where);
    }
    if (kind == "table") {
      return detail::table_from_json(j, where);
    }
    if (kind == "product") {
      auto left  = detail::factor_from_json(detail::field(j, "left", where), where + "/left", dir, cap);
      auto right = detail::factor_from_json(detail::field(j, "right", where), where + "/right", dir, cap);
      auto mode  = ProductGenerators::union_set;
      if (j.contains("generators")) {
        auto g = detail::string_at(j["generators"], where + "/generators");
        if (g == "fibered") {
          mode = ProductGenerators::fibered;
        } else if (g != "union") {
          throw ParseError(detail::at(where + "/generators", "expected \"union\" or \"fibered\""));
        }
      }
      try {
        return std::make_shared<ProductMonoid>(left, right, mode, cap);
      } catch (Error const& e) {
        throw ParseError(detail::at(where, e.what()));
      }
    }
    throw ParseError(detail::at(where + "/kind", "unknown monoid kind \"" + kind + "\""));
  }

  inline MonoidPtr load_monoid(std::filesystem::path const& path,
                               std::size_t                  cap = kDefaultElementCap) {
    auto name = path.filename().string();
    return monoid_from_json(read_json_file(path), name, path.parent_path(), cap);
  }

  inline Json monoid_to_json(MonoidBackend const& m) {
    Json j;
    if (auto const* rw = dynamic_cast<RewritingMonoid const*>(&m)) {
      auto const& a = rw->system().alphabet();
      j["kind"]     = "rewriting";
      j["alphabet"] = a.symbols();
      j["rules"]    = Json::array();
      for (auto const& r : rw->system().rules()) {
        j["rules"].push_back({a.format(r.lhs), a.format(r.rhs)});
      }
      if (rw->custom_generators()) {
        j["generators"] = Json::array();
        for (auto const& g : m.generators()) {
          j["generators"].push_back(g.name);
        }
      }
    } else if (auto const* tr = dynamic_cast<TransformationMonoid const*>(&m)) {
      j["kind"]       = "transformation";
      j["degree"]     = tr->degree();
      j["generators"] = Json::array();
      for (auto const& g : m.generators()) {
        j["generators"].push_back({{"name", g.name}, {"images", g.element.data}});
      }
    } else if (auto const* tb = dynamic_cast<TableMonoid const*>(&m)) {
      auto names = tb->names();
      auto n     = tb->adjoined_identity() ? names.size() - 1 : names.size();
      names.resize(n);
      j["kind"]     = "table";
      j["elements"] = names;
      j["table"]    = Json::array();
      for (std::size_t x = 0; x < n; ++x) {
        Json row = Json::array();
        for (std::size_t y = 0; y < n; ++y) {
          row.push_back(tb->names()[tb->table()[x][y]]);
        }
        j["table"].push_back(row);
      }
      j["identity"] = tb->adjoined_identity() ? Json(nullptr) : Json(tb->names()[tb->identity_index()]);
      j["generators"] = Json::array();
      for (auto const& g : m.generators()) {
        j["generators"].push_back(g.name);
      }
    } else if (auto const* pr = dynamic_cast<ProductMonoid const*>(&m)) {
      j["kind"]       = "product";
      j["left"]       = monoid_to_json(*pr->left());
      j["right"]      = monoid_to_json(*pr->right());
      j["generators"] = pr->mode() == ProductGenerators::fibered ? "fibered" : "union";
    } else {
      throw Error("monoid backend cannot be serialized");
    }
    return j;
  }

  ////////////////////////////////////////////////////////////////////////
  // Spaces, maps, partitions
  ////////////////////////////////////////////////////////////////////////

  inline ExtDist distance_from_json(Json const& v, std::string const& where) {
    if (v.is_null()) {
      return ExtDist::infinite();
    }
    try {
      if (v.is_number_integer()) {
        return ExtDist::finite(Rational(v.get<std::int64_t>()));
      }
      if (v.is_string()) {
        auto s = v.get<std::string>();
        if (s == "inf") {
          return ExtDist::infinite();
        }
        return ExtDist::finite(parse_rational(s));
      }
    } catch (Error const& e) {
      throw ParseError(detail::at(where, e.what()));
    }
    throw ParseError(detail::at(where, "expected an integer, a \"p/q\" string or null"));
  }

  inline Json distance_to_json(ExtDist const& d) {
    if (!d.is_finite()) {
      return nullptr;
    }
    auto q = d.value();
    if (q.denominator() == 1) {
      return q.numerator();
    }
    return semigeo::to_string(q);
  }

  inline FiniteSemimetricSpace space_from_json(Json const& j, std::string const& where = "") {
    auto        names = detail::strings_at(detail::field(j, "points", where), where + "/points");
    auto const& dj    = detail::field(j, "dist", where);
    if (!dj.is_array()) {
      throw ParseError(detail::at(where + "/dist", "expected an array of rows"));
    }
    DistanceEntries d;
    for (std::size_t r = 0; r < dj.size(); ++r) {
      auto w = where + "/dist/" + std::to_string(r);
      if (!dj[r].is_array()) {
        throw ParseError(detail::at(w, "expected a row"));
      }
      d.emplace_back();
      for (std::size_t c = 0; c < dj[r].size(); ++c) {
        d.back().push_back(distance_from_json(dj[r][c], w + "/" + std::to_string(c)));
      }
    }
    try {
      return FiniteSemimetricSpace(names, d);
    } catch (InvalidSpace const& e) {
      throw ParseError(detail::at(where, e.what()));
    }
  }

  inline FiniteSemimetricSpace load_space(std::filesystem::path const& path) {
    return space_from_json(read_json_file(path), path.filename().string());
  }

  inline Json space_to_json(FiniteSemimetricSpace const& x) {
    Json j;
    j["points"] = x.names();
    j["dist"]   = Json::array();
    for (auto const& row : x.matrix()) {
      Json r = Json::array();
      for (auto const& v : row) {
        r.push_back(distance_to_json(v));
      }
      j["dist"].push_back(r);
    }
    return j;
  }

  inline PointMap map_from_json(Json const&                  j,
                                FiniteSemimetricSpace const& x,
                                FiniteSemimetricSpace const& y,
                                std::string const&           where = "") {
    auto target = [&](Json const& v, std::string const& w) {
      auto name = detail::string_at(v, w);
      auto p    = y.find(name);
      if (!p) {
        throw ParseError(detail::at(w, "unknown target point \"" + name + "\""));
      }
      return *p;
    };
    PointMap f(x.size());
    if (j.is_array()) {
      if (j.size() != x.size()) {
        throw ParseError(detail::at(where, "map has " + std::to_string(j.size()) + " entries for "
                                               + std::to_string(x.size()) + " source points"));
      }
      for (std::size_t i = 0; i < j.size(); ++i) {
        f[i] = target(j[i], where + "/" + std::to_string(i));
      }
      return f;
    }
    if (!j.is_object()) {
      throw ParseError(detail::at(where, "expected an array or an object"));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      auto it = j.find(x.name(i));
      if (it == j.end()) {
        throw ParseError(detail::at(where, "no image for \"" + x.name(i) + "\""));
      }
      f[i] = target(*it, where + "/" + x.name(i));
    }
    return f;
  }

  inline Json map_to_json(PointMap const& f, FiniteSemimetricSpace const& y) {
    Json j = Json::array();
    for (auto v : f) {
      j.push_back(y.name(v));
    }
    return j;
  }

  // Classes as arrays of element names; every element in exactly one class.
  inline std::vector<std::size_t> partition_from_json(Json const&         j,
                                                      FiniteMonoid const& fm,
                                                      std::string const&  where = "") {
    Json const& classes = j.is_object() ? detail::field(j, "classes", where) : j;
    if (!classes.is_array()) {
      throw ParseError(detail::at(where, "expected an array of classes"));
    }
    constexpr auto           unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(fm.size(), unset);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      auto w = where + "/" + std::to_string(c);
      for (auto const& name : detail::strings_at(classes[c], w)) {
        std::size_t i = 0;
        try {
          i = fm.index_of(fm.backend()->parse(name));
        } catch (Error const& e) {
          throw ParseError(detail::at(w, e.what()));
        }
        if (label[i] != unset) {
          throw ParseError(detail::at(w, "element \"" + name + "\" appears twice"));
        }
        label[i] = c;
      }
    }
    for (std::size_t i = 0; i < fm.size(); ++i) {
      if (label[i] == unset) {
        throw ParseError(detail::at(where, "element \"" + fm.name(i) + "\" is in no class"));
      }
    }
    return label;
  }

}  // namespace semigeo
