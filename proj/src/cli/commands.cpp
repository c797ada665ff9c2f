#include "cobarlab/cli.hpp"

#include "cobarlab/io.hpp"
#include "cobarlab/witness.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

namespace cobarlab {

namespace {

constexpr int kOk = 0, kFalse = 1, kInputError = 2;

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string out_path;
  unsigned threads = 1;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  json inputs = json::array();
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

LoadedFile load(Context& cx, const std::string& path) {
  auto f = load_presentation(path);
  cx.inputs.push_back({{"path", path}, {"sha256", f.sha256}});
  return f;
}

void emit(Context& cx, const std::string& command, json result, std::optional<std::uint64_t> seed = {}) {
  if (cx.out_path.empty()) return;
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - cx.start;
  json report{{"schema", kSchema}, {"command", command}, {"inputs", cx.inputs}, {"result", std::move(result)},
              {"wall_seconds", dt.count()}};
  if (seed) report["seed"] = *seed;
  std::ofstream os(cx.out_path, std::ios::binary);
  if (!os) throw InputError(cx.out_path + ": cannot write report");
  os << report.dump(2) << '\n';
}

// Finite or flattened-graded coalgebra, plus the graded original when there is one.
struct LoadedCoalgebra {
  std::shared_ptr<const Coalgebra> flat;
  std::optional<GradedCoalgebra> graded;
};

LoadedCoalgebra coalgebra_from(const json& doc) {
  const auto kind = presentation_kind(doc);
  if (kind == "finite") return {std::make_shared<const Coalgebra>(parse_finite_coalgebra(doc)), std::nullopt};
  if (kind == "graded") {
    auto g = parse_graded_coalgebra(doc);
    return {std::make_shared<const Coalgebra>(flatten(g)), std::move(g)};
  }
  throw InputError("/kind: expected a coalgebra (\"finite\" or \"graded\"), got \"" + kind + "\"");
}

void require_valid(const Coalgebra& c) {
  const auto r = validate(c);
  if (r.all_required()) return;
  std::string msg = "input fails validation";
  for (const auto& p : r.problems) msg += "; " + p;
  throw InputError(msg + " (run `cobarlab validate` for details)");
}

int cmd_validate(Context& cx, const std::string& path) {
  const auto f = load(cx, path);
  const auto kind = presentation_kind(f.doc);
  json result{{"kind", kind}};
  bool ok = false;
  if (kind == "finite" || kind == "graded") {
    const auto r = kind == "finite" ? validate(parse_finite_coalgebra(f.doc)) : validate(parse_graded_coalgebra(f.doc));
    result["report"] = to_json(r);
    ok = r.all_required();
    for (const auto& [name, flag] : {std::pair<const char*, bool>{"coassociative", r.coassociative},
                                     {"counital", r.counital},
                                     {"coaugmented", r.coaugmented},
                                     {"conilpotent", r.conilpotent},
                                     {"cocommutative", r.cocommutative},
                                     {"grading_compatible", r.grading_compatible}})
      cx.out << name << ": " << yes_no(flag) << '\n';
    for (const auto& p : r.problems) cx.out << "problem: " << p << '\n';
  } else if (kind == "algebra" || kind == "quadratic") {
    const auto r = kind == "algebra" ? validate(parse_algebra(f.doc)) : validate(parse_quadratic_algebra(f.doc));
    result["report"] = {{"associative", r.associative},
                        {"unital", r.unital},
                        {"augmentation_multiplicative", r.augmentation_multiplicative}};
    ok = r.ok();
    cx.out << "associative: " << yes_no(r.associative) << "\nunital: " << yes_no(r.unital)
           << "\naugmentation_multiplicative: " << yes_no(r.augmentation_multiplicative) << '\n';
  } else {
    throw InputError("/kind: cannot validate kind \"" + kind + "\"");
  }
  result["valid"] = ok;
  emit(cx, "validate", std::move(result));
  return ok ? kOk : kFalse;
}

void print_table(std::ostream& os, const ExtTable& t) {
  const auto totals = t.totals();
  os << "Ext totals i=0.." << t.imax << ": " << join(totals) << '\n';
  if (t.graded)
    for (const auto& [key, d] : t.cells)
      if (d) os << "  Ext^{" << key.first << "," << key.second << "} = " << d << '\n';
  if (!t.truncation_note.empty()) os << "note: " << t.truncation_note << '\n';
}

int cmd_ext(Context& cx, const std::string& path, unsigned imax, std::optional<unsigned> jmax, const std::string& side) {
  const auto f = load(cx, path);
  const auto kind = presentation_kind(f.doc);
  json result{{"side", side}};
  int code = kOk;

  if (kind == "algebra" || kind == "quadratic") {
    if (side != "algebra") throw InputError("--side " + side + " needs a coalgebra; algebra input takes --side algebra");
    ExtTable t;
    if (kind == "algebra") {
      const auto a = parse_algebra(f.doc);
      if (!validate(a).ok()) throw InputError("algebra fails validation (run `cobarlab validate`)");
      t = bar_ext_table(a, imax, jmax, cx.threads);
    } else {
      const auto a = parse_quadratic_algebra(f.doc);
      t = bar_ext_table(a, imax, jmax.value_or(a.bound()), cx.threads);
    }
    result["table"] = to_json(t);
    print_table(cx.out, t);
    emit(cx, "ext", std::move(result));
    return kOk;
  }

  const auto c = coalgebra_from(f.doc);
  require_valid(*c.flat);
  if (c.graded && !jmax) jmax = c.graded->bound();
  if (const auto bound = c.flat->truncation_bound(); bound && jmax && *jmax > *bound)
    throw TruncationError("--jmax " + std::to_string(*jmax) + " exceeds the truncation bound " + std::to_string(*bound) +
                          " of the presentation");

  if (side == "co" || side == "op") {
    const auto t = ext_table(CobarComplex(*c.flat, imax, jmax), cx.threads);
    result["table"] = to_json(t);
    print_table(cx.out, t);
    if (side == "op") {
      const auto t_op = ext_table(CobarComplex(opposite(*c.flat), imax, jmax), cx.threads);
      const bool same = t == t_op;
      result["opposite_table"] = to_json(t_op);
      result["symmetric"] = same;
      cx.out << "table(C) == table(C^op): " << yes_no(same) << '\n';
      if (!same) code = kFalse;
    }
  } else if (side == "algebra") {
    const auto t = c.graded ? bar_ext_table(graded_dual(*c.graded), imax, *jmax, cx.threads)
                            : bar_ext_table(dual_algebra(*c.flat), imax, jmax, cx.threads);
    result["table"] = to_json(t);
    print_table(cx.out, t);
  } else {
    throw InputError("--side: expected co, op or algebra");
  }
  emit(cx, "ext", std::move(result));
  return code;
}

int cmd_resolve(Context& cx, const std::string& path, unsigned length, std::optional<unsigned> cap,
                std::optional<std::uint64_t> seed, const std::string& module) {
  const auto f = load(cx, path);
  const auto c = coalgebra_from(f.doc);
  require_valid(*c.flat);
  if (!cap) cap = c.flat->truncation_bound();

  std::optional<Comodule> m;
  if (module == "k" || module == "regular") {
    m = parse_comodule(json(module), c.flat);
  } else {
    const auto mf = load(cx, module);
    if (presentation_kind(mf.doc) != "comodule") throw InputError(module + ": /kind: expected \"comodule\"");
    m = parse_comodule(mf.doc, c.flat);
  }
  if (!validate(*m).ok()) throw InputError("comodule fails validation");

  const auto r = minimal_coresolution(*m, length, CoresolutionOptions{seed, cap});
  const auto check = check_coresolution(r);
  json result = to_json(r);
  result["check"] = {{"exact", check.exact},
                     {"minimal", check.minimal},
                     {"embeddings_injective", check.embeddings_injective},
                     {"socle_isomorphisms", check.socle_isomorphisms}};
  result["module"] = module;
  cx.out << "cogenerator dims: " << join(r.cogenerator_dims()) << '\n';
  if (cap) cx.out << "weight cap: " << *cap << '\n';
  cx.out << "exact: " << yes_no(check.exact) << ", minimal: " << yes_no(check.minimal) << '\n';
  emit(cx, "resolve", std::move(result), seed);
  return check.ok() ? kOk : kFalse;
}

Comodule comodule_arg(Context& cx, const std::string& arg, const CoalgebraPtr& base) {
  if (arg == "k" || arg == "regular") return parse_comodule(json(arg), base);
  const auto f = load(cx, arg);
  if (presentation_kind(f.doc) != "comodule") throw InputError(arg + ": /kind: expected \"comodule\"");
  auto m = parse_comodule(f.doc, base);
  if (!validate(m).ok()) throw InputError(arg + ": comodule fails validation");
  return m;
}

int cmd_compare(Context& cx, const std::string& path, const std::string& l, const std::string& m, unsigned n) {
  const auto f = load(cx, path);
  const auto kind = presentation_kind(f.doc);
  if (kind == "graded")
    throw InputError("compare needs a finite-dimensional coalgebra; run `cobarlab flatten " + path +
                     " --out flat.json` and pass the flattened file");
  if (kind != "finite") throw InputError("/kind: expected \"finite\"");
  const auto c = std::make_shared<const Coalgebra>(parse_finite_coalgebra(f.doc));
  require_valid(*c);
  const auto L = comodule_arg(cx, l, c), M = comodule_arg(cx, m, c);
  const auto r = compare_theorem1(L, M, n);
  json result = to_json(r);
  result["L"] = l;
  result["M"] = m;
  result["n"] = n;
  cx.out << "comodule side: " << join(r.comodule_side) << "\nmodule side:   " << join(r.module_side)
         << "\nverdict: " << yes_no(r.verdict) << '\n';
  emit(cx, "compare", std::move(result));
  return r.verdict ? kOk : kFalse;
}

int cmd_flatten(Context& cx, const std::string& path) {
  const auto f = load(cx, path);
  if (presentation_kind(f.doc) != "graded") throw InputError("/kind: expected \"graded\"");
  const auto flat = to_json(flatten(parse_graded_coalgebra(f.doc)));
  if (cx.out_path.empty()) {
    cx.out << flat.dump(2) << '\n';
  } else {
    std::ofstream os(cx.out_path, std::ios::binary);
    if (!os) throw InputError(cx.out_path + ": cannot write");
    os << flat.dump(2) << '\n';
  }
  return kOk;
}

int cmd_demo(Context& cx, const std::string& which, std::size_t samples, std::uint64_t seed) {
  if (which == "nonrational") {
    // evaluation at the limit: a functional on C* that no vector of V represents
    const auto f = TaggedCofunctional::eventual_value(1);
    const auto m = build_nonrational_module(f);
    const bool axioms = verify_module_axioms(m, samples, seed);
    const bool rational = is_rational(f);
    const auto sub = max_rational_submodule(m);
    const bool span_e1 = sub.dim() == 1 && sub.vectors()[0] == Vector{Scalar(1), Scalar(0)};
    json result{{"functional", f.describe()},
                {"module_axioms", axioms},
                {"samples", samples},
                {"is_rational", rational},
                {"max_rational_submodule", span_e1 ? "span(e1)" : "other"},
                {"max_rational_submodule_dim", sub.dim()}};
    if (auto chi = support_obstruction(f, 8)) result["obstruction_on_e0_to_e7"] = f(*chi).get_str();
    cx.out << "functional: " << f.describe() << "\nmodule axioms (" << samples << " samples): " << yes_no(axioms)
           << "\nis_rational: " << yes_no(rational) << "\nmax rational submodule: "
           << (span_e1 ? "span(e1)" : "other") << '\n';
    emit(cx, "demo nonrational", std::move(result), seed);
    return axioms && !rational && span_e1 ? kOk : kFalse;
  }
  if (which == "contra") {
    const auto r = verify_contra_witness(build_contra_witness(), samples, seed);
    json result{{"module_trivial", r.module_trivial},
                {"contra_nontrivial", r.contra_nontrivial},
                {"splitting_not_contra_linear", r.splitting_not_contra_linear},
                {"samples", r.samples}};
    cx.out << "module_trivial: " << yes_no(r.module_trivial) << "\ncontra_nontrivial: " << yes_no(r.contra_nontrivial)
           << "\nsplitting_not_contra_linear: " << yes_no(r.splitting_not_contra_linear) << '\n';
    emit(cx, "demo contra", std::move(result), seed);
    return r.ok() ? kOk : kFalse;
  }
  throw InputError("demo: expected nonrational or contra");
}

unsigned default_threads() {
  if (const char* env = std::getenv("COBARLAB_THREADS")) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context cx{out, err, {}};
  cx.threads = default_threads();

  CLI::App app{"cobarlab: exact homological invariants of conilpotent coalgebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", cx.out_path, "Write the JSON report here");
  app.add_option("--threads", cx.threads, "Worker threads (0 = all cores; default $COBARLAB_THREADS or 1)");

  std::string path, side = "co", lpath = "k", mpath = "k", module = "k", which;
  unsigned imax = 4, length = 3, n = 3;
  std::optional<unsigned> jmax, cap;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 200;
  std::uint64_t demo_seed = kDefaultWitnessSeed;

  auto* v = app.add_subcommand("validate", "Check the structure axioms of a presentation");
  v->add_option("path", path)->required();

  auto* e = app.add_subcommand("ext", "Ext tables from the cobar or bar complex");
  e->add_option("path", path)->required();
  e->add_option("--imax", imax);
  e->add_option("--jmax", jmax);
  e->add_option("--side", side)->check(CLI::IsMember({"co", "op", "algebra"}));

  auto* r = app.add_subcommand("resolve", "Minimal cofree coresolution");
  r->add_option("path", path)->required();
  r->add_option("--length", length);
  r->add_option("--cap", cap, "Weight cap (graded input defaults to the truncation bound)");
  r->add_option("--seed", seed, "Randomize the socle retraction");
  r->add_option("--module", module, "k, regular or a comodule file");

  auto* c = app.add_subcommand("compare", "Ext over C against Ext over C*");
  c->add_option("path", path)->required();
  c->add_option("--L", lpath, "k, regular or a comodule file");
  c->add_option("--M", mpath, "k, regular or a comodule file");
  c->add_option("--n", n);

  auto* f = app.add_subcommand("flatten", "Graded presentation to a finite one with weights");
  f->add_option("path", path)->required();

  auto* d = app.add_subcommand("demo", "Witnesses for the infinite-dimensional phenomena");
  d->add_option("which", which)->required()->check(CLI::IsMember({"nonrational", "contra"}));
  d->add_option("--samples", samples);
  d->add_option("--seed", demo_seed);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << '\n';
    return kInputError;
  }

  try {
    if (v->parsed()) return cmd_validate(cx, path);
    if (e->parsed()) return cmd_ext(cx, path, imax, jmax, side);
    if (r->parsed()) return cmd_resolve(cx, path, length, cap, seed, module);
    if (c->parsed()) return cmd_compare(cx, path, lpath, mpath, n);
    if (f->parsed()) return cmd_flatten(cx, path);
    if (d->parsed()) return cmd_demo(cx, which, samples, demo_seed);
  } catch (const json::exception& ex) {
    err << "error: malformed JSON value: " << ex.what() << '\n';
    return kInputError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace cobarlab
