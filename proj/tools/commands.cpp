#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "subdyn/bratteli.hpp"
#include "subdyn/coding.hpp"
#include "subdyn/constructions.hpp"
#include "subdyn/errors.hpp"
#include "subdyn/phase_space.hpp"
#include "subdyn/recognizability.hpp"
#include "subdyn/report.hpp"
#include "subdyn/words.hpp"

namespace subdyn::cli {
namespace {

struct Options {
  std::string sub;
  std::size_t cap = 0;
  std::size_t depth = 0;
  std::size_t radius = 0;
  std::size_t steps = 0;
  std::string method;
  std::string format = "report";
  std::string base;
  std::optional<std::uint64_t> seed;
  bool format_set = false;
  bool depth_set = false;
};

struct Input {
  Substitution s;
  std::string text;
};

Input load(const Options& o) {
  if (o.sub.empty()) throw InputError("MissingInput", "--sub <file> is required");
  std::ifstream in(o.sub, std::ios::binary);
  if (!in) throw InputError("FileNotFound", "cannot read " + o.sub);
  std::ostringstream buf;
  buf << in.rdbuf();
  return {parse_substitution(buf.str()), buf.str()};
}

std::size_t or_default(std::size_t v, std::size_t d) { return v == 0 ? d : v; }

Report start(const std::string& command, const Options& o, const Input& in) {
  Report r(command);
  r.add("input", o.sub);
  r.add("input.digest", digest(in.text));
  r.add("alphabet", join(in.s.names(), " "));
  return r;
}

std::string letters(const Substitution& s, const std::vector<Letter>& ls) {
  std::vector<std::string> out;
  for (Letter a : ls) out.push_back(s.name(a));
  return out.empty() ? "-" : join(out, " ");
}

std::string path_text(const FinitePath& p) {
  std::vector<std::string> out;
  for (auto e : p.edges) out.push_back(std::to_string(e));
  return join(out, " ");
}

StationaryDiagram diagram_for(const Input& in, const std::string& method) {
  if (method == "nesting") return nesting_diagram(in.s).diagram;
  if (method == "derivative") return diagram_via_derivative(in.s).diagram;
  std::vector<std::uint64_t> counts;
  for (const Word& img : in.s.images()) counts.push_back(img.size());
  return stationary_from_substitution(in.s, counts);
}

Letter base_letter(const Substitution& s, const std::string& name, Letter fallback) {
  if (name.empty()) return fallback;
  auto a = s.find(name);
  if (!a) throw InputError("UnknownLetter", "no letter named " + name);
  return *a;
}

void add_diagram(Report& r, const StationaryDiagram& d) {
  r.add("vertices", static_cast<std::uint64_t>(d.read_rule.size()));
  r.add_substitution("read", d.read_rule);
  for (std::size_t a = 0; a < d.read_rule.size(); ++a)
    r.add("top." + d.read_rule.name(static_cast<Letter>(a)), d.top_counts[a]);
}

std::string cmd_analyze(const Options& o) {
  auto in = load(o);
  const auto& s = in.s;
  std::size_t cap = or_default(o.cap, 16);
  Report r = start("analyze", o, in);
  r.add("cap", static_cast<std::uint64_t>(cap));
  r.add_substitution("rule", s);
  auto m = incidence_matrix(s);
  for (std::size_t a = 0; a < s.size(); ++a) {
    std::vector<std::string> row;
    for (auto v : m[a]) row.push_back(std::to_string(v));
    r.add("incidence." + s.name(static_cast<Letter>(a)), join(row, " "));
  }
  auto cls = classify_letters(s);
  r.add("letters.long", letters(s, cls.long_letters));
  r.add("letters.short", letters(s, cls.short_letters));
  r.add("nesting", to_string(nesting_class(s)));
  auto bound = short_block_bound(s, cap);
  r.add("short_block_bound", bound.bounded ? std::to_string(bound.value) : "unbounded up to " + std::to_string(cap));
  auto per = periodicity_witness_search(s, 8, 4);
  r.add("periodicity", per ? "witness " + s.format(*per) : "none up to length 8 power 4");
  auto pr = is_proper(s);
  r.add("proper", pr.proper ? "true p=" + std::to_string(pr.p) : "false up to p=" + std::to_string(pr.p));
  auto mp = is_m_primitive(s);
  r.add("m_primitive", mp.m_primitive);
  if (!mp.reason.empty()) r.add("m_primitive.reason", mp.reason);
  r.add("m_primitive.blocks", static_cast<std::uint64_t>(mp.blocks.size()));
  r.add("minimal_components", static_cast<std::uint64_t>(minimal_components(s, cap).size()));
  return r.str();
}

std::string cmd_language(const Options& o) {
  auto in = load(o);
  std::size_t cap = or_default(o.cap, 4);
  Report r = start("language", o, in);
  r.add("cap", static_cast<std::uint64_t>(cap));
  auto lang = factor_language(in.s, cap);
  r.add("closure", lang.closure == Closure::Converged ? "converged" : "cycle-summed");
  r.add("count", static_cast<std::uint64_t>(lang.factors.size()));
  for (std::size_t n = 1; n <= cap; ++n) {
    std::vector<std::string> ws;
    for (const Word& w : lang.of_length(n)) ws.push_back(in.s.format(w));
    r.add("length." + std::to_string(n), ws.empty() ? "-" : join(ws, " "));
  }
  return r.str();
}

std::string cmd_classify(const Options& o) {
  auto in = load(o);
  Report r = start("classify", o, in);
  auto cls = classify_letters(in.s);
  r.add("letters.long", letters(in.s, cls.long_letters));
  r.add("letters.short", letters(in.s, cls.short_letters));
  r.add("nesting", to_string(nesting_class(in.s)));
  std::size_t depth = or_default(o.depth, 5);
  for (std::size_t a = 0; a < in.s.size(); ++a) {
    std::vector<std::string> lens;
    for (std::size_t n = 0; n <= depth; ++n)
      lens.push_back(std::to_string(image_lengths(in.s, static_cast<unsigned>(n))[a]));
    r.add("lengths." + in.s.name(static_cast<Letter>(a)), join(lens, " "));
  }
  return r.str();
}

std::string cmd_periodic(const Options& o) {
  auto in = load(o);
  std::size_t len = or_default(o.cap, 8);
  std::size_t pow = or_default(o.depth, 4);
  Report r = start("periodic-check", o, in);
  r.add("max_length", static_cast<std::uint64_t>(len));
  r.add("power", static_cast<std::uint64_t>(pow));
  auto w = periodicity_witness_search(in.s, len, pow);
  r.add("verdict", w ? "periodic" : "NoneUpToBounds");
  if (w) r.add("witness", in.s.format(*w));
  return r.str();
}

std::string cmd_nesting(const Options& o) {
  auto in = load(o);
  std::size_t cap = or_default(o.cap, 32);
  Report r = start("nesting", o, in);
  r.add("short_cap", static_cast<std::uint64_t>(cap));
  auto nc = nesting_diagram(in.s, cap);
  const auto& names = nc.diagram.read_rule.names();
  r.add("words", static_cast<std::uint64_t>(nc.vocabulary.size()));
  for (std::size_t k = 0; k < nc.vocabulary.size(); ++k) r.add("word." + names[k], nc.vocabulary[k].format(in.s));
  r.add_substitution("rule", nc.diagram.read_rule);
  for (std::size_t k = 0; k < names.size(); ++k) r.add("top." + names[k], nc.diagram.top_counts[k]);
  return r.str();
}

std::string cmd_minimal(const Options& o) {
  auto in = load(o);
  std::size_t cap = or_default(o.cap, 16);
  Report r = start("minimal", o, in);
  r.add("scale", static_cast<std::uint64_t>(cap));
  auto comps = minimal_components(in.s, cap);
  r.add("components", static_cast<std::uint64_t>(comps.size()));
  for (std::size_t c = 0; c < comps.size(); ++c) {
    std::string key = "component." + std::to_string(c + 1);
    r.add(key + ".seeds", letters(in.s, comps[c].seeds));
    std::vector<std::string> pairs;
    for (const auto& [x, y] : comps[c].fixed_pairs) pairs.push_back(in.s.format({x, y}));
    r.add(key + ".fixed_pairs", pairs.empty() ? "-" : join(pairs, " "));
  }
  return r.str();
}

void add_return_words(Report& r, const Substitution& s, const ReturnWordSystem& rs) {
  std::vector<std::string> pairs;
  for (const auto& [x, y] : rs.pairs) pairs.push_back(s.format({x, y}));
  r.add("pairs", join(pairs, " "));
  r.add("power", static_cast<std::uint64_t>(rs.power));
  r.add("return_words", static_cast<std::uint64_t>(rs.vocabulary.size()));
  for (std::size_t k = 0; k < rs.vocabulary.size(); ++k) r.add("return." + rs.names[k], s.format(rs.vocabulary[k]));
}

std::string cmd_return_words(const Options& o) {
  auto in = load(o);
  std::size_t scale = or_default(o.cap, 16);
  Report r = start("return-words", o, in);
  r.add("scale", static_cast<std::uint64_t>(scale));
  add_return_words(r, in.s, return_words(in.s, scale));
  return r.str();
}

std::string cmd_derive(const Options& o) {
  auto in = load(o);
  std::size_t scale = or_default(o.cap, 16);
  Report r = start("derive", o, in);
  r.add("scale", static_cast<std::uint64_t>(scale));
  auto rs = return_words(in.s, scale);
  add_return_words(r, in.s, rs);
  auto tau = derivative_substitution(rs, in.s);
  r.add_substitution("tau", tau);
  auto pr = is_proper(tau);
  r.add("tau.proper", pr.proper ? "true p=" + std::to_string(pr.p) : "false up to p=" + std::to_string(pr.p));
  return r.str();
}

std::string cmd_build(const Options& o, bool dot_default) {
  auto in = load(o);
  std::string method = o.method.empty() ? "derivative" : o.method;
  auto d = diagram_for(in, method);
  std::size_t depth = or_default(o.depth, 2);
  std::string format = dot_default && o.format == "report" && !o.format_set ? "dot" : o.format;
  if (format == "dot") {
    auto u = d.unroll(depth);
    auto bad = validate(u);
    if (!bad.empty()) throw InputError("InvalidDiagram", bad.front().kind + ": " + bad.front().detail);
    return export_dot(u);
  }
  Report r = start(dot_default ? "export" : "build-diagram", o, in);
  r.add("method", method);
  r.add("depth", static_cast<std::uint64_t>(depth));
  add_diagram(r, d);
  return r.str();
}

std::string cmd_read(const Options& o) {
  auto in = load(o);
  std::string method = o.method.empty() ? "derivative" : o.method;
  auto d = diagram_for(in, method);
  Report r = start("read", o, in);
  r.add("method", method);
  auto read = read_substitution(d);
  r.add_substitution("read", read);
  r.add("roundtrip", read == d.read_rule);
  return r.str();
}

std::string cmd_vershik(const Options& o) {
  auto in = load(o);
  std::string method = o.method.empty() ? "derivative" : o.method;
  auto d = diagram_for(in, method);
  std::size_t depth = or_default(o.depth, 3);
  auto u = d.unroll(depth);
  FinitePath p = minimal_path(u, depth, 0);
  Report r = start("vershik", o, in);
  r.add("method", method);
  r.add("depth", static_cast<std::uint64_t>(depth));
  r.add("steps", static_cast<std::uint64_t>(o.steps));
  r.add("start", path_text(p));
  if (o.steps > 0) {
    auto codings = vershik_orbit_codings(d, p, o.steps, depth);
    for (std::size_t t = 0; t < o.steps; ++t) {
      std::vector<std::string> cells;
      for (const auto& c : codings)
        cells.push_back(d.read_rule.name(static_cast<Letter>(c.labels[t])) + "/" + std::to_string(c.ranks[t]));
      r.add("orbit." + std::to_string(t), join(cells, " "));
    }
  }
  return r.str();
}

std::string cmd_recognize(const Options& o) {
  auto in = load(o);
  const auto& s = in.s;
  std::size_t radius = or_default(o.radius, 32);
  auto levels = static_cast<unsigned>(or_default(o.depth, 3));
  auto cls = classify_letters(s);
  if (cls.long_letters.empty()) throw InputError("NoLongLetters", "recognition needs a growing letter");
  Letter a = base_letter(s, o.base, cls.long_letters.front());
  std::size_t span = 2 * radius + 1;
  unsigned k = 0;
  while (image_lengths(s, k)[a] < 2 * span) {
    if (++k > 64) throw InputError("NoGrowth", "the base letter does not grow");
  }
  Word w = expand(s, {a}, k);
  std::size_t first = (w.size() - span) / 2;
  if (o.seed) {
    std::mt19937_64 rng(*o.seed);
    first = std::uniform_int_distribution<std::size_t>(0, w.size() - span)(rng);
  }
  Word window(w.begin() + static_cast<std::ptrdiff_t>(first), w.begin() + static_cast<std::ptrdiff_t>(first + span));
  Report r = start("recognize", o, in);
  r.add("radius", static_cast<std::uint64_t>(radius));
  r.add("levels", static_cast<std::uint64_t>(levels));
  r.add("seed", o.seed ? std::to_string(*o.seed) : std::string("none"));
  r.add("source", s.name(a) + " iterated " + std::to_string(k) + " times, offset " + std::to_string(first));
  r.add("window", s.format(window));
  auto res = recognize_window(s, window, levels);
  if (auto* chain = std::get_if<ParseChain>(&res)) {
    r.add("verdict", "unique");
    for (const auto& lvl : chain->levels) {
      std::string key = "level." + std::to_string(lvl.level);
      r.add(key + ".interior", "[" + std::to_string(lvl.interior_begin) + "," + std::to_string(lvl.interior_end) + ")");
      r.add(key + ".center", s.name(lvl.view.center_letter) + " " + std::to_string(lvl.view.center_offset));
      std::vector<std::string> cuts;
      for (auto c : lvl.view.cuts) cuts.push_back(std::to_string(c));
      r.add(key + ".cuts", cuts.empty() ? "-" : join(cuts, " "));
    }
  } else {
    const auto& amb = std::get<AmbiguityReport>(res);
    r.add("verdict", "ambiguous");
    r.add("ambiguous.level", static_cast<std::uint64_t>(amb.level));
    r.add("ambiguous.variants", static_cast<std::uint64_t>(amb.variants.size()));
  }
  return r.str();
}

std::string cmd_jsymbol(const Options& o) {
  auto in = load(o);
  std::size_t j = o.depth_set ? o.depth : 2;
  Report r = start("jsymbol", o, in);
  JSymbol sym;
  if (o.method.empty() || o.method == "substitution") {
    r.add("method", "substitution");
    sym = build_j_symbol(in.s, base_letter(in.s, o.base, 0), j);
  } else {
    auto d = diagram_for(in, o.method);
    r.add("method", o.method);
    sym = build_j_symbol(d, base_letter(d.read_rule, o.base, 0), j);
  }
  r.add("base", sym.base);
  r.add("level", static_cast<std::uint64_t>(j));
  r.add("width", static_cast<std::uint64_t>(sym.width()));
  r.add_block("rows", format_rows(sym.rows));
  return r.str();
}

std::string cmd_lambda(const Options& o) {
  auto in = load(o);
  const auto& s = in.s;
  std::size_t radius = or_default(o.radius, 4);
  auto n = static_cast<unsigned>(or_default(o.depth, 3));
  Report r = start("lambda", o, in);
  r.add("radius", static_cast<std::uint64_t>(radius));
  r.add("core_depth", static_cast<std::uint64_t>(n));
  auto seeds = lambda_seeds(s);
  r.add("seeds", static_cast<std::uint64_t>(seeds.size()));
  for (const auto& seed : seeds) {
    std::string key = "seed." + s.format({seed.a, seed.b});
    auto w = lambda_window(s, seed, radius);
    auto core = core_membership(s, w, n);
    r.add(key + ".p", static_cast<std::uint64_t>(seed.p));
    r.add(key + ".window", w.format(s));
    r.add(key + ".core", core.consistent ? "consistent" : "refuted at " + std::to_string(core.refuted_at));
  }
  return r.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Substitution subshifts and their Bratteli-Vershik models"};
  app.require_subcommand(1);
  Options o;

  using Handler = std::function<std::string()>;
  std::map<CLI::App*, Handler> handlers;
  auto add = [&](const std::string& name, const std::string& help, Handler h) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--sub", o.sub, "substitution file")->required();
    sub->add_option("--cap", o.cap, "length cap or scale");
    sub->add_option("--depth", o.depth, "levels, unroll depth or power");
    sub->add_option("--radius", o.radius, "window radius");
    sub->add_option("--steps", o.steps, "orbit steps");
    sub->add_option("--method", o.method, "diagram construction")
        ->check(CLI::IsMember({"nesting", "derivative", "direct", "substitution"}));
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"dot", "report"}));
    sub->add_option("--base", o.base, "base letter or vertex");
    sub->add_option("--seed", o.seed, "seed for sampled windows");
    handlers[sub] = std::move(h);
  };
  add("analyze", "summary of structural properties", [&] { return cmd_analyze(o); });
  add("language", "factors up to --cap", [&] { return cmd_language(o); });
  add("classify", "long and short letters", [&] { return cmd_classify(o); });
  add("periodic-check", "bounded search for periodic points", [&] { return cmd_periodic(o); });
  add("nesting", "marked-word vocabulary and matching rule", [&] { return cmd_nesting(o); });
  add("minimal", "minimal components", [&] { return cmd_minimal(o); });
  add("return-words", "return words of canonical fixed pairs", [&] { return cmd_return_words(o); });
  add("derive", "return words and derivative substitution", [&] { return cmd_derive(o); });
  add("build-diagram", "stationary ordered diagram", [&] { return cmd_build(o, false); });
  add("read", "substitution read on the diagram", [&] { return cmd_read(o); });
  add("vershik", "orbit coding under the Vershik map", [&] { return cmd_vershik(o); });
  add("recognize", "desubstitution of a sampled window", [&] { return cmd_recognize(o); });
  add("jsymbol", "box matrix of a j-symbol", [&] { return cmd_jsymbol(o); });
  add("lambda", "fixed-end seeds and their windows", [&] { return cmd_lambda(o); });
  add("export", "DOT export of the diagram", [&] { return cmd_build(o, true); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return 2;
  }

  for (auto& [sub, handler] : handlers) {
    if (!sub->parsed()) continue;
    o.format_set = sub->count("--format") > 0;
    o.depth_set = sub->count("--depth") > 0;
    try {
      out << handler();
      return 0;
    } catch (const InputError& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    } catch (const ScaleError& e) {
      err << "error: " << e.what() << '\n';
      return 3;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}

}  // namespace subdyn::cli
