// The semigeo command line, callable in-process.
//
// Exit status: 0 for data and positive verdicts, 1 for negative verdicts
// (a violation, a bounded search that found nothing), 2 for bad input and
// exhausted caps.

#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "semigeo/asymptotics.hpp"
#include "semigeo/cayley.hpp"
#include "semigeo/description.hpp"
#include "semigeo/errors.hpp"
#include "semigeo/geometry.hpp"
#include "semigeo/green.hpp"
#include "semigeo/monoid.hpp"

#ifndef SEMIGEO_DATA_DIR
#define SEMIGEO_DATA_DIR "data"
#endif

namespace semigeo {

  namespace cli {

    struct Settings {
      std::size_t cap         = kDefaultElementCap;
      std::size_t radius_cap  = 64;
      std::size_t search_cap  = kDefaultSearchCap;
      std::size_t jobs        = 1;
      bool        timing      = false;
    };

    // A readable file path, else a built-in description under the data
    // directory ($SEMIGEO_DATA overrides the compiled-in one).
    inline std::filesystem::path resolve(std::string const& name, char const* ext) {
      std::filesystem::path p(name);
      if (std::filesystem::is_regular_file(p)) {
        return p;
      }
      char const*           env = std::getenv("SEMIGEO_DATA");
      std::filesystem::path dir = env != nullptr ? env : SEMIGEO_DATA_DIR;
      for (auto const& c : {dir / name, dir / (name + ext)}) {
        if (std::filesystem::is_regular_file(c)) {
          return c;
        }
      }
      throw ParseError(name + ": no such file or built-in description");
    }

    inline MonoidPtr monoid(std::string const& name, Settings const& s) {
      return load_monoid(resolve(name, ".mon"), s.cap);
    }

    inline FiniteSemimetricSpace space(std::string const& name) {
      return load_space(resolve(name, ".space"));
    }

    inline void check_radius(std::size_t r, Settings const& s) {
      if (r > s.radius_cap) {
        throw CapExceeded("radius " + std::to_string(r) + " exceeds the radius cap "
                              + std::to_string(s.radius_cap) + " (raise --radius-cap)",
                          s.radius_cap);
      }
    }

    inline Side side(std::string const& s) {
      return s == "left" ? Side::left : Side::right;
    }

    inline char const* yes(bool b) {
      return b ? "yes" : "no";
    }

    inline std::string join(std::vector<std::string> const& xs, char const* sep = " ") {
      std::string out;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i == 0 ? "" : sep) + xs[i];
      }
      return out;
    }

    inline Element parse_element(MonoidBackend const& m, std::string const& text) {
      try {
        return m.parse(text);
      } catch (Error const& e) {
        throw ParseError("--element: " + std::string(e.what()));
      }
    }

    inline std::size_t vertex(DigraphBall const& g, std::string const& text, char const* flag) {
      Element x;
      try {
        x = g.monoid->parse(text);
      } catch (Error const& e) {
        throw ParseError(std::string(flag) + ": " + e.what());
      }
      auto v = g.find(x);
      if (!v) {
        throw ParseError(std::string(flag) + ": " + text + " is not in the ball of radius "
                         + std::to_string(g.radius));
      }
      return *v;
    }

    inline std::string names_of(FiniteMonoid const& fm, std::vector<std::size_t> const& xs) {
      std::vector<std::string> out;
      for (auto x : xs) {
        out.push_back(fm.name(x));
      }
      return join(out);
    }

    ////////////////////////////////////////////////////////////////////////
    // Subcommands
    ////////////////////////////////////////////////////////////////////////

    struct BallArgs {
      std::string monoid;
      std::size_t radius = 2;
      std::string side   = "right";
      std::string format = "table";
    };

    inline int ball(BallArgs const& a, Settings const& s, std::ostream& out) {
      check_radius(a.radius, s);
      auto g = build_cayley_ball(monoid(a.monoid, s), side(a.side), a.radius, s.cap);
      if (a.format == "dot") {
        out << export_dot(g, "ball");
      } else if (a.format == "space") {
        out << space_to_json(in_ball_space(g)).dump(1) << '\n';
      } else if (a.format == "json") {
        Json j;
        j["side"]     = to_string(g.side);
        j["radius"]   = g.radius;
        j["vertices"] = Json::array();
        for (std::size_t v = 0; v < g.size(); ++v) {
          j["vertices"].push_back(
              {{"name", g.name(v)}, {"length", g.vertices[v].length}, {"complete", static_cast<bool>(g.complete[v])}});
        }
        j["edges"] = Json::array();
        for (auto const& e : g.edges) {
          j["edges"].push_back({g.name(e.source), g.name(e.target), g.label(e)});
        }
        out << j.dump(1) << '\n';
      } else {
        out << "# ball side=" << to_string(g.side) << " radius=" << g.radius
            << " vertices=" << g.size() << " edges=" << g.edges.size() << '\n';
        out << "element\tlength\tcomplete\n";
        for (std::size_t v = 0; v < g.size(); ++v) {
          out << g.name(v) << '\t' << g.vertices[v].length << '\t' << yes(g.complete[v]) << '\n';
        }
      }
      return 0;
    }

    struct DistArgs {
      std::string monoid;
      std::size_t radius = 4;
      std::string side   = "right";
      std::string from;
      std::string to;
    };

    inline int dist(DistArgs const& a, Settings const& s, std::ostream& out) {
      check_radius(a.radius, s);
      auto g = build_cayley_ball(monoid(a.monoid, s), side(a.side), a.radius, s.cap);
      out << "# distances side=" << to_string(g.side) << " radius=" << g.radius
          << " (inf: unreachable; >h: beyond horizon h)\n";
      if (!a.from.empty() && !a.to.empty()) {
        auto u = vertex(g, a.from, "--from");
        auto v = vertex(g, a.to, "--to");
        out << g.name(u) << '\t' << g.name(v) << '\t' << graph_distance(g, u, v) << '\n';
        return 0;
      }
      if (!a.from.empty()) {
        auto u   = vertex(g, a.from, "--from");
        auto row = distances_from(g, u).dist;
        for (std::size_t v = 0; v < g.size(); ++v) {
          out << g.name(u) << '\t' << g.name(v) << '\t' << row[v] << '\n';
        }
        return 0;
      }
      write_distance_table(out, g);
      return 0;
    }

    struct PosetArgs {
      std::string monoid;
      std::size_t radius   = 4;
      std::size_t per_edge = 1;
      std::string side     = "right";
    };

    inline int poset(PosetArgs const& a, Settings const& s, std::ostream& out) {
      check_radius(a.radius, s);
      auto g    = build_cayley_ball(monoid(a.monoid, s), side(a.side), a.radius, s.cap);
      auto comp = strongly_connected_components(g);
      auto d    = all_distances(g);
      out << "# components side=" << to_string(g.side) << " radius=" << g.radius
          << " count=" << comp.members.size() << '\n';
      out << "component\tverified\tmembers\n";
      for (std::size_t c = 0; c < comp.members.size(); ++c) {
        std::vector<std::string> names;
        for (auto v : comp.members[c]) {
          names.push_back(g.name(v));
        }
        out << c << '\t' << yes(comp.verified[c]) << '\t' << join(names) << '\n';
      }
      out << "# order: lower\tupper (upper reaches lower)\n";
      for (std::size_t i = 0; i < comp.members.size(); ++i) {
        for (std::size_t j = 0; j < comp.members.size(); ++j) {
          if (i != j && d[comp.members[j].front()][comp.members[i].front()].is_finite()) {
            out << i << '\t' << j << '\n';
          }
        }
      }
      auto t = component_comparability(g, a.per_edge);
      out << "# sampled points=" << t.points.size() << " per-edge=" << a.per_edge << '\n';
      for (auto c : {Comparison::below, Comparison::above, Comparison::equivalent,
                     Comparison::incomparable, Comparison::unknown}) {
        out << to_string(c) << '\t' << t.count(c) << '\n';
      }
      return 0;
    }

    struct GreenArgs {
      std::string monoid;
      std::string format = "table";
    };

    inline int green(GreenArgs const& a, Settings const& s, std::ostream& out) {
      auto fm = FiniteMonoid::from(monoid(a.monoid, s), s.cap);
      auto gs = green_relations(fm);
      if (a.format == "json") {
        Json j;
        j["elements"] = fm.size();
        for (auto [key, p] : {std::pair{"R", &gs.r}, std::pair{"L", &gs.l}, std::pair{"H", &gs.h}}) {
          j[key] = Json::array();
          for (auto const& c : p->classes) {
            Json names = Json::array();
            for (auto x : c) {
              names.push_back(fm.name(x));
            }
            j[key].push_back(names);
          }
        }
        out << j.dump(1) << '\n';
        return 0;
      }
      out << "# green elements=" << fm.size() << " R=" << gs.r.size() << " L=" << gs.l.size()
          << " H=" << gs.h.size() << '\n';
      for (auto [key, p] : {std::pair{"R", &gs.r}, std::pair{"L", &gs.l}, std::pair{"H", &gs.h}}) {
        for (std::size_t c = 0; c < p->size(); ++c) {
          out << key << '\t' << c << '\t' << names_of(fm, p->classes[c]) << '\n';
        }
      }
      return 0;
    }

    struct SchutzArgs {
      std::string monoid;
      std::string element;
      std::size_t radius   = 0;  // 0: exact, the monoid must be finite
      std::size_t max_ball = 3;
      std::size_t ball_radius = 0;
      std::string format   = "table";
    };

    inline SchutzAction action_for(SchutzArgs const& a, Settings const& s) {
      auto m = monoid(a.monoid, s);
      auto h = parse_element(*m, a.element);
      if (a.radius > 0) {
        check_radius(a.radius, s);
        return bounded_schutz_action(m, h, a.radius, s.cap);
      }
      auto fm  = FiniteMonoid::from(m, s.cap);
      auto gs  = green_relations(fm);
      auto cls = gs.h.classes[gs.h.of[fm.index_of(h)]];
      // Put h first so that it is the base vertex.
      std::stable_partition(cls.begin(), cls.end(), [&](std::size_t x) { return fm.element(x) == h; });
      auto act = schutz_action(fm, gs, cls);
      return act;
    }

    inline void write_group(SchutzGroup const& g, std::ostream& out) {
      auto const&              m = *g.monoid;
      std::vector<std::string> hs;
      for (auto const& x : g.h_class) {
        hs.push_back(m.format(x));
      }
      out << "H-class\t" << join(hs) << '\n';
      out << "group order\t" << g.order() << '\n';
      for (std::size_t k = 0; k < g.order(); ++k) {
        std::vector<std::string> img;
        for (auto i : g.perms[k]) {
          img.push_back(std::to_string(i));
        }
        out << "g" << k << '\t' << m.format(g.representatives[k]) << '\t' << join(img) << '\n';
      }
    }

    inline int schutz(SchutzArgs const& a, Settings const& s, std::ostream& out) {
      auto act = action_for(a, s);
      if (a.format == "dot") {
        out << export_dot(act.graph, "schutzenberger");
        return 0;
      }
      out << "# schutzenberger " << (act.exact ? "exact" : "bounded")
          << " horizon=" << act.horizon << " vertices=" << act.graph.size() << '\n';
      write_group(act.group, out);
      out << "vertex\tindegree\toutdegree\tcomplete\n";
      for (std::size_t v = 0; v < act.graph.size(); ++v) {
        out << act.graph.name(v) << '\t' << act.graph.in_degree(v) << '\t'
            << act.graph.out_degree(v) << '\t' << yes(act.graph.complete[v]) << '\n';
      }
      return 0;
    }

    inline int action(SchutzArgs const& a, Settings const& s, std::ostream& out) {
      auto act = action_for(a, s);
      auto rep = check_schutz_action(act, a.max_ball);
      out << "# action " << (rep.exact ? "exact" : "bounded") << " horizon=" << rep.horizon << '\n';
      out << "group order\t" << rep.group_order << '\n';
      out << "vertices\t" << rep.vertices << '\n';
      if (rep.exact) {
        out << "H-classes in R\t" << rep.h_classes_in_r << '\n';
      }
      out << "isometric\t" << yes(rep.isometric) << "\t(" << rep.pairs_compared << " pairs)\n";
      if (auto const& v = rep.isometry_violation) {
        out << "isometry violation\tg" << v->element << '\t' << act.graph.name(v->x) << '\t'
            << act.graph.name(v->y) << '\t' << v->before << '\t' << v->after << '\n';
      }
      out << "outward proper\t" << yes(rep.outward_proper) << '\n';
      for (auto [r, n] : rep.proper_counts) {
        out << "proper ball\t" << r << '\t' << n << '\n';
      }
      out << "cocompact\t" << yes(rep.cocompact);
      if (rep.covering_radius) {
        out << "\tcovering radius " << *rep.covering_radius;
      } else {
        out << "\tno covering radius <= " << rep.largest_radius_tried;
      }
      out << '\n';
      for (auto const& n : rep.notes) {
        out << "# " << n << '\n';
      }
      bool ok = rep.isometric && rep.outward_proper && rep.cocompact;
      out << "verdict\t" << (ok ? "ok" : "fail") << '\n';
      return ok ? 0 : 1;
    }

    inline int svarc(SchutzArgs const& a, Settings const& s, std::ostream& out) {
      auto act = action_for(a, s);
      auto rep = svarc_milnor_generators(act, a.ball_radius);
      auto const& g = act.group;
      auto gname = [&](std::size_t k) { return "g" + std::to_string(k); };
      auto names = [&](std::vector<std::size_t> const& xs) {
        std::vector<std::string> o;
        for (auto x : xs) {
          o.push_back(gname(x));
        }
        return join(o);
      };
      out << "# svarc-milnor ball radius=" << rep.ball_radius << " l=" << semigeo::to_string(rep.l) << '\n';
      write_group(g, out);
      out << "ball covers\t" << yes(rep.ball_covers) << '\n';
      out << "zero set\t" << names(rep.zero_set) << '\n';
      out << "generators\t" << names(rep.generators) << '\n';
      out << "generates\t" << yes(rep.generates) << '\n';
      out << "lambda\t" << semigeo::to_string(rep.lambda) << '\n';
      out << "element\tword length\tdisplacement\n";
      for (std::size_t k = 0; k < g.order(); ++k) {
        out << gname(k) << '\t'
            << (rep.word_length[k] ? std::to_string(*rep.word_length[k]) : std::string("inf"))
            << '\t' << rep.displacement[k] << '\n';
      }
      out << "upper bound\t" << yes(rep.upper_bound) << '\n';
      out << "lower bound\t" << yes(rep.lower_bound) << '\n';
      bool ok = rep.generates && rep.upper_bound && rep.lower_bound;
      out << "verdict\t" << (ok ? "ok" : "fail") << '\n';
      return ok ? 0 : 1;
    }

    struct GrowthArgs {
      std::string   monoid;
      std::size_t   max = 10;
      std::string   compare;
      std::size_t   compare_max = 0;
      std::uint64_t lambda_max = 10;
      std::uint64_t c_max      = 10;
      std::string   format     = "table";
    };

    inline int growth(GrowthArgs const& a, Settings const& s, std::ostream& out) {
      auto g = growth_sequence(*monoid(a.monoid, s), a.max, s.cap);
      auto c = classify_growth(g);
      std::optional<GrowthSequence>    other;
      std::optional<DominationWitness> w;
      if (!a.compare.empty()) {
        other = growth_sequence(*monoid(a.compare, s), a.compare_max == 0 ? a.max : a.compare_max, s.cap);
        w     = dominates_within(g, *other, a.lambda_max, a.c_max);
      }
      if (a.format == "json") {
        Json j;
        j["generators"] = g.generators;
        j["values"]     = g.values;
        j["class"]      = c.to_string();
        if (other) {
          j["dominated_by"] = w ? Json{{"lambda", w->lambda}, {"C", w->c}, {"checked", w->checked}}
                                : Json("NoneWithinBounds");
        }
        out << j.dump(1) << '\n';
      } else {
        out << "# growth generators=" << g.generators << " window=" << g.window() << '\n';
        out << "m\tg(m)\n";
        for (std::size_t m = 0; m < g.window(); ++m) {
          out << m << '\t' << g.values[m] << '\n';
        }
        out << "class\t" << c.to_string() << '\n';
        if (other) {
          if (w) {
            out << "dominated by comparison\tlambda=" << w->lambda << " C=" << w->c
                << " on " << w->checked << " values (window certificate)\n";
          } else {
            out << "dominated by comparison\tNoneWithinBounds (lambda<=" << a.lambda_max
                << " C<=" << a.c_max << "; not an asymptotic refutation)\n";
          }
        }
      }
      return other && !w ? 1 : 0;
    }

    struct EndsArgs {
      std::string monoid;
      std::size_t kmax   = 4;
      std::size_t radius = 12;
      std::string format = "table";
    };

    inline int ends(EndsArgs const& a, Settings const& s, std::ostream& out) {
      check_radius(a.radius, s);
      auto p = ends_profile(*monoid(a.monoid, s), a.kmax, a.radius, s.cap);
      if (a.format == "json") {
        Json j;
        j["radius"]       = p.radius;
        j["k"]            = p.ks;
        j["counts"]       = p.counts;
        j["inner_counts"] = p.inner_counts;
        j["verdict"]      = p.verdict_string();
        j["horizon"]      = p.horizon();
        out << j.dump(1) << '\n';
        return 0;
      }
      out << "# ends " << p.horizon() << '\n';
      out << "k\te(k,r)\te(k,r-1)\n";
      for (std::size_t i = 0; i < p.ks.size(); ++i) {
        out << p.ks[i] << '\t' << p.counts[i] << '\t' << p.inner_counts[i] << '\n';
      }
      out << "verdict\t" << p.verdict_string() << '\n';
      return 0;
    }

    struct QiArgs {
      std::string source;
      std::string target;
      std::string map;
      std::string lambda  = "1";
      std::string epsilon = "0";
      std::string mu      = "0";
    };

    inline Rational rational_flag(std::string const& text, char const* flag) {
      try {
        auto q = parse_rational(text);
        if (q < Rational(0)) {
          throw ParseError("negative");
        }
        return q;
      } catch (Error const& e) {
        throw ParseError(std::string(flag) + ": " + e.what());
      }
    }

    inline int qi_check(QiArgs const& a, Settings const&, std::ostream& out) {
      auto x    = space(a.source);
      auto y    = space(a.target);
      auto path = resolve(a.map, ".map");
      auto f    = map_from_json(read_json_file(path), x, y, path.filename().string());
      QiConstants c{rational_flag(a.lambda, "--lambda"), rational_flag(a.epsilon, "--epsilon"),
                    rational_flag(a.mu, "--mu")};
      auto r = check_quasi_isometry(f, x, y, c);
      out << "# qi-check lambda=" << semigeo::to_string(c.lambda) << " epsilon=" << semigeo::to_string(c.epsilon) << " mu=" << semigeo::to_string(c.mu) << '\n';
      if (r.violation) {
        auto const& v = *r.violation;
        out << "embedding\tviolation " << to_string(v.side) << " bound at (" << x.name(v.x) << ","
            << x.name(v.y) << "): d=" << x.d(v.x, v.y) << " d'=" << y.d(f[v.x], f[v.y]) << '\n';
      } else {
        out << "embedding\tok\n";
      }
      out << "density\t" << r.density << (r.dense ? "\tok" : "\tfail") << '\n';
      out << "verdict\t" << (r.ok() ? "ok" : "fail") << '\n';
      return r.ok() ? 0 : 1;
    }

    struct SearchArgs {
      std::string source;
      std::string target;
      std::string lambda_max  = "4";
      std::string epsilon_max = "4";
      std::string mu_max      = "4";
    };

    inline int qi_search(SearchArgs const& a, Settings const& s, std::ostream& out) {
      auto x = space(a.source);
      auto y = space(a.target);
      auto w = search_quasi_isometry(x, y, rational_flag(a.lambda_max, "--lambda-max"),
                                     rational_flag(a.epsilon_max, "--epsilon-max"),
                                     rational_flag(a.mu_max, "--mu-max"), s.search_cap);
      out << "# qi-search lambda<=" << a.lambda_max << " epsilon<=" << a.epsilon_max
          << " mu<=" << a.mu_max << '\n';
      if (!w) {
        out << "verdict\tNoneWithinBounds\n";
        return 1;
      }
      out << "lambda\t" << semigeo::to_string(w->constants.lambda) << '\n';
      out << "epsilon\t" << semigeo::to_string(w->constants.epsilon) << '\n';
      out << "mu\t" << semigeo::to_string(w->constants.mu) << '\n';
      for (std::size_t i = 0; i < x.size(); ++i) {
        out << x.name(i) << '\t' << y.name(w->map[i]) << '\n';
      }
      out << "verdict\tok\n";
      return 0;
    }

    struct SpaceArgs {
      std::string space;
      std::string epsilon = "0";
    };

    inline int quasimetric(SpaceArgs const& a, Settings const&, std::ostream& out) {
      auto x   = space(a.space);
      auto eps = rational_flag(a.epsilon, "--epsilon");
      auto l   = quasi_metricity_constant(x, eps);
      out << "# quasimetric epsilon=" << semigeo::to_string(eps) << '\n';
      out << "basepoints\t" << basepoints(x).size() << '\n';
      if (!l) {
        out << "verdict\tnot strongly connected\n";
        return 1;
      }
      out << "lambda\t" << semigeo::to_string(*l) << '\n';
      out << "verdict\tok\n";
      return 0;
    }

    inline int symmetrize_cmd(SpaceArgs const& a, Settings const&, std::ostream& out) {
      auto x   = space(a.space);
      auto eps = rational_flag(a.epsilon, "--epsilon");
      if (!strongly_connected(x)) {
        out << "verdict\tnot strongly connected\n";
        return 1;
      }
      auto r = symmetrize(x, eps);
      auto j = space_to_json(r.metric);
      j["forward"]  = {{"lambda", to_string(r.forward.lambda)},
                       {"epsilon", to_string(r.forward.epsilon)},
                       {"mu", to_string(r.forward.mu)}};
      j["backward"] = {{"lambda", to_string(r.back_lambda)}, {"epsilon", to_string(r.back_epsilon)}};
      out << j.dump(1) << '\n';
      return 0;
    }

    struct QuotientArgs {
      std::string monoid;
      std::string partition;
      bool        project = false;
      std::size_t radius  = 0;
    };

    inline int quotient(QuotientArgs const& a, Settings const& s, std::ostream& out) {
      auto m = monoid(a.monoid, s);
      if (a.radius > 0) {
        check_radius(a.radius, s);
        auto p = std::dynamic_pointer_cast<ProductMonoid const>(m);
        if (!p) {
          throw ParseError("--radius needs a product monoid");
        }
        auto r = check_projection_qi(p, a.radius, s.cap);
        out << "# projection evidence radius=" << r.radius << " (pairs certified in both balls)\n";
        out << "fiber diameter\t" << r.fiber_diameter << '\n';
        out << "pairs checked\t" << r.pairs_checked << '\n';
        out << "pairs skipped\t" << r.pairs_skipped << '\n';
        out << "surjective\t" << yes(r.surjective) << '\n';
        if (r.violation) {
          out << "violation\t" << to_string(r.violation->side) << '\n';
        }
        out << "verdict\t" << (r.ok ? "ok" : "fail") << '\n';
        return r.ok ? 0 : 1;
      }
      auto                     fm = FiniteMonoid::from(m, s.cap);
      std::vector<std::size_t> eta;
      if (a.project) {
        eta = projection_kernel(fm);
      } else if (!a.partition.empty()) {
        auto path = resolve(a.partition, ".json");
        eta       = partition_from_json(read_json_file(path), fm, path.filename().string());
      } else {
        throw ParseError("quotient needs --partition, --project or --radius");
      }
      auto r = check_quotient_qi(fm, eta);
      out << "# quotient elements=" << fm.size() << '\n';
      if (r.not_congruence) {
        auto const& w = *r.not_congruence;
        out << "congruence\tno: " << fm.name(w.a) << " ~ " << fm.name(w.b) << " and " << fm.name(w.c)
            << " ~ " << fm.name(w.d) << " but " << fm.name(fm.product(w.a, w.c)) << " !~ "
            << fm.name(fm.product(w.b, w.d)) << '\n';
        out << "verdict\tfail\n";
        return 1;
      }
      out << "congruence\tyes\n";
      out << "classes\t" << r.quotient.size() << '\n';
      out << "class diameter R\t" << r.diameter << '\n';
      if (r.trivial_quotient) {
        out << "# the quotient is a single point\n";
      }
      if (r.check.violation) {
        out << "embedding\tviolation " << to_string(r.check.violation->side) << '\n';
      }
      out << "verdict\t" << (r.ok ? "ok" : "fail") << '\n';
      return r.ok ? 0 : 1;
    }

    // The command line as typed, with paths cut to their file names.
    inline std::string echo(std::vector<std::string> const& args) {
      std::string out = "# semigeo";
      for (auto const& a : args) {
        std::error_code ec;
        auto shown = a.find('/') != std::string::npos && std::filesystem::exists(a, ec)
                         ? std::filesystem::path(a).filename().string()
                         : a;
        out += " " + shown;
      }
      return out;
    }

  }  // namespace cli

  inline int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    using namespace cli;
    CLI::App app{"Semimetric geometry of finitely generated monoids"};
    app.name("semigeo");
    app.require_subcommand(1);
    Settings s;
    app.add_option("--cap", s.cap, "element cap for enumeration")->capture_default_str();
    app.add_option("--radius-cap", s.radius_cap, "largest radius accepted")->capture_default_str();
    app.add_option("--search-cap", s.search_cap, "largest source space for qi-search")->capture_default_str();
    app.add_option("--jobs", s.jobs, "worker threads; output does not depend on it")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--timing", s.timing, "report wall time on stderr");
    app.fallthrough();

    auto sides   = CLI::IsMember({"right", "left"});
    auto add_mon = [](CLI::App* c, std::string& target) {
      c->add_option("--monoid", target, "monoid description file or built-in name")->required();
    };

    BallArgs ba;
    auto*    c_ball = app.add_subcommand("ball", "enumerate a Cayley ball");
    add_mon(c_ball, ba.monoid);
    c_ball->add_option("--radius", ba.radius)->capture_default_str();
    c_ball->add_option("--side", ba.side)->check(sides)->capture_default_str();
    c_ball->add_option("--format", ba.format)->check(CLI::IsMember({"table", "dot", "json", "space"}))->capture_default_str();

    DistArgs da;
    auto*    c_dist = app.add_subcommand("dist", "graph distances inside a ball");
    add_mon(c_dist, da.monoid);
    c_dist->add_option("--radius", da.radius)->capture_default_str();
    c_dist->add_option("--side", da.side)->check(sides)->capture_default_str();
    c_dist->add_option("--from", da.from, "source element");
    c_dist->add_option("--to", da.to, "target element");

    PosetArgs pa;
    auto*     c_poset = app.add_subcommand("poset", "strongly connected components and their order");
    add_mon(c_poset, pa.monoid);
    c_poset->add_option("--radius", pa.radius)->capture_default_str();
    c_poset->add_option("--per-edge", pa.per_edge, "interior sample points per edge")->capture_default_str();
    c_poset->add_option("--side", pa.side)->check(sides)->capture_default_str();

    GreenArgs ga;
    auto*     c_green = app.add_subcommand("green", "Green's relations of a finite monoid");
    add_mon(c_green, ga.monoid);
    c_green->add_option("--format", ga.format)->check(CLI::IsMember({"table", "json"}))->capture_default_str();

    SchutzArgs sa;
    auto       add_schutz = [&](CLI::App* c) {
      add_mon(c, sa.monoid);
      c->add_option("--element", sa.element, "an element of the H-class")->required();
      c->add_option("--radius", sa.radius, "bounded mode radius; 0 needs a finite monoid")->capture_default_str();
    };
    auto* c_schutz = app.add_subcommand("schutz", "Schutzenberger graph and group");
    add_schutz(c_schutz);
    c_schutz->add_option("--format", sa.format)->check(CLI::IsMember({"table", "dot"}))->capture_default_str();
    auto* c_act = app.add_subcommand("act", "check the Schutzenberger action");
    add_schutz(c_act);
    c_act->add_option("--max-ball", sa.max_ball, "largest ball for properness counts")->capture_default_str();
    auto* c_svarc = app.add_subcommand("svarc", "generators from a covering ball");
    add_schutz(c_svarc);
    c_svarc->add_option("--ball-radius", sa.ball_radius)->capture_default_str();

    GrowthArgs gr;
    auto*      c_growth = app.add_subcommand("growth", "growth sequence and window domination");
    add_mon(c_growth, gr.monoid);
    c_growth->add_option("--max", gr.max, "largest word length")->capture_default_str();
    c_growth->add_option("--compare", gr.compare, "monoid whose growth should dominate");
    c_growth->add_option("--compare-max", gr.compare_max, "window of the comparison (default --max)");
    c_growth->add_option("--lambda-max", gr.lambda_max)->capture_default_str();
    c_growth->add_option("--c-max", gr.c_max)->capture_default_str();
    c_growth->add_option("--format", gr.format)->check(CLI::IsMember({"table", "json"}))->capture_default_str();

    EndsArgs ea;
    auto*    c_ends = app.add_subcommand("ends", "estimate the number of ends");
    add_mon(c_ends, ea.monoid);
    c_ends->add_option("--kmax", ea.kmax)->capture_default_str();
    c_ends->add_option("--radius", ea.radius)->capture_default_str();
    c_ends->add_option("--format", ea.format)->check(CLI::IsMember({"table", "json"}))->capture_default_str();

    QiArgs qa;
    auto*  c_qi = app.add_subcommand("qi-check", "check a map against quasi-isometry constants");
    c_qi->add_option("--source", qa.source)->required();
    c_qi->add_option("--target", qa.target)->required();
    c_qi->add_option("--map", qa.map)->required();
    c_qi->add_option("--lambda", qa.lambda)->capture_default_str();
    c_qi->add_option("--epsilon", qa.epsilon)->capture_default_str();
    c_qi->add_option("--mu", qa.mu)->capture_default_str();

    SearchArgs qs;
    auto*      c_search = app.add_subcommand("qi-search", "search for a quasi-isometry");
    c_search->add_option("--source", qs.source)->required();
    c_search->add_option("--target", qs.target)->required();
    c_search->add_option("--lambda-max", qs.lambda_max)->capture_default_str();
    c_search->add_option("--epsilon-max", qs.epsilon_max)->capture_default_str();
    c_search->add_option("--mu-max", qs.mu_max)->capture_default_str();

    SpaceArgs sp;
    auto*     c_qm = app.add_subcommand("quasimetric", "least quasi-metricity constant");
    c_qm->add_option("--space", sp.space)->required();
    c_qm->add_option("--epsilon", sp.epsilon)->capture_default_str();
    auto* c_sym = app.add_subcommand("symmetrize", "d(x,y) + d(y,x) with its constants");
    c_sym->add_option("--space", sp.space)->required();
    c_sym->add_option("--epsilon", sp.epsilon)->capture_default_str();

    QuotientArgs qu;
    auto*        c_quot = app.add_subcommand("quotient", "check a quotient map");
    add_mon(c_quot, qu.monoid);
    c_quot->add_option("--partition", qu.partition, "classes of the congruence");
    c_quot->add_flag("--project", qu.project, "use the kernel of the first projection");
    c_quot->add_option("--radius", qu.radius, "projection evidence for infinite products");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      auto code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }

    auto start = std::chrono::steady_clock::now();
    int  code  = 0;
    try {
      bool structured = (c_ball->parsed() && (ba.format == "json" || ba.format == "space"))
                        || (c_green->parsed() && ga.format == "json")
                        || (c_growth->parsed() && gr.format == "json")
                        || (c_ends->parsed() && ea.format == "json") || c_sym->parsed();
      if (!structured) {
        out << echo(args) << '\n';
      }
      if (c_ball->parsed()) {
        code = ball(ba, s, out);
      } else if (c_dist->parsed()) {
        code = dist(da, s, out);
      } else if (c_poset->parsed()) {
        code = poset(pa, s, out);
      } else if (c_green->parsed()) {
        code = green(ga, s, out);
      } else if (c_schutz->parsed()) {
        code = schutz(sa, s, out);
      } else if (c_act->parsed()) {
        code = action(sa, s, out);
      } else if (c_svarc->parsed()) {
        code = svarc(sa, s, out);
      } else if (c_growth->parsed()) {
        code = growth(gr, s, out);
      } else if (c_ends->parsed()) {
        code = ends(ea, s, out);
      } else if (c_qi->parsed()) {
        code = qi_check(qa, s, out);
      } else if (c_search->parsed()) {
        code = qi_search(qs, s, out);
      } else if (c_qm->parsed()) {
        code = quasimetric(sp, s, out);
      } else if (c_sym->parsed()) {
        code = symmetrize_cmd(sp, s, out);
      } else if (c_quot->parsed()) {
        code = quotient(qu, s, out);
      }
    } catch (CapExceeded const& e) {
      std::string msg = e.what();
      err << "error: " << msg
          << (msg.find("raise --") == std::string::npos ? " (raise --cap)" : "") << '\n';
      return 2;
    } catch (Error const& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    } catch (nlohmann::json::exception const& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
    if (s.timing) {
      auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
      err << "time\t" << std::fixed << std::setprecision(1) << ms.count() << " ms\n";
    }
    return code;
  }

}  // namespace semigeo
